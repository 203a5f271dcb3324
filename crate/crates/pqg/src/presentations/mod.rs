//! Generator/relation presentations of the walk algebra.
//!
//! A reciprocal random walk determines a universal *-algebra on the local
//! units `1(v|w)` and generators `u_{e,f} ∈ A(s(e) t(e); s(f) t(f))`, one for
//! each ordered pair of edges, subject to
//!
//! ```text
//! Σ_{t(g)=w} u_{g,e}* u_{g,f} = δ_{e,f} 1(w|t(e))          (column orthogonality)
//! Σ_{s(g)=v} u_{e,g} u_{f,g}* = δ_{e,f} 1(s(e)|v)          (row orthogonality)
//! u_{e,f}* = sgn(e)sgn(f) √(w(f)/w(e)) u_{ē,f̄}            (star twist)
//! ```
//!
//! This module materializes that presentation over a finite walk window:
//! noncommutative polynomials in the generators ([`NCPoly`]), the instantiated
//! relation list ([`build_presentation`]), degree-bounded ideal membership
//! with replayable witnesses, quotient bases per graded block, well-posedness
//! of the coproduct/counit/antipode on the quotient, colored multiplier
//! matrices, and the dynamical quantum SU(2) derivation.
//!
//! Unit products and unit sandwiching are definitional here rather than
//! relations: every word carries its square grade, multiplication collapses
//! non-composable grades to zero, and a unit word absorbs into any adjacent
//! word of matching grade. Sums over edges at a vertex are complete only when
//! the vertex is interior; relations whose defining sum is truncated by the
//! window are instantiated but flagged as boundary, and the certification
//! routines never assert them.

mod colored;
mod dynamical;
mod hopf;
mod ideal;
mod json;

pub use colored::{colored_matrix, ColoredMatrix};
pub use dynamical::{dynamical_generators, dynamical_su2_report};
pub use hopf::{
    antipode, check_hopf_wellposed, coproduct, counit_matrix, replay_tensor_witness,
    tensor_ideal_member, TensorPoly, TensorWitness,
};
pub use json::{presentation_from_json, presentation_to_json};
pub use ideal::{graded_basis, ideal_member, replay_witness, GradedBasis, IdealWitness, WitnessTerm};

use crate::error::{Error, Result};
use crate::grading::{Obj, Square};
use crate::scalar::{int, FieldSpec, Scalar};
use crate::walks::ReciprocalWalk;
use std::collections::BTreeMap;

/// A single non-unit generator occurrence inside a word: `u_{e,f}` or its
/// star, with `e`, `f` edge indices of the underlying walk.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Letter {
    U { e: usize, f: usize },
    UStar { e: usize, f: usize },
}

impl Letter {
    /// The square grade of the generator.
    pub fn grade(&self, walk: &ReciprocalWalk) -> Square {
        match *self {
            Letter::U { e, f } => Square::new(
                walk.edges[e].src,
                walk.edges[e].tgt,
                walk.edges[f].src,
                walk.edges[f].tgt,
            ),
            Letter::UStar { e, f } => Letter::U { e, f }.grade(walk).star_grade(),
        }
    }

    /// The adjoint letter.
    pub fn star(&self) -> Letter {
        match *self {
            Letter::U { e, f } => Letter::UStar { e, f },
            Letter::UStar { e, f } => Letter::U { e, f },
        }
    }
}

impl std::fmt::Display for Letter {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match *self {
            Letter::U { e, f: ff } => write!(f, "u({e},{ff})"),
            Letter::UStar { e, f: ff } => write!(f, "u*({e},{ff})"),
        }
    }
}

/// A normalized word in the generators. An empty letter list denotes the
/// bare local unit `1(v|w)` of the word's (necessarily unit) grade; a
/// nonempty list denotes the product of its letters, whose grades compose
/// horizontally to `grade`. Unit factors never appear inside a word: they
/// are absorbed during multiplication by grade matching.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Word {
    pub grade: Square,
    pub letters: Vec<Letter>,
}

impl Word {
    /// The unit word `1(v|w)`.
    pub fn unit(v: Obj, w: Obj) -> Word {
        Word {
            grade: Square::unit(v, w),
            letters: Vec::new(),
        }
    }

    /// A single-letter word.
    pub fn letter(walk: &ReciprocalWalk, l: Letter) -> Word {
        Word {
            grade: l.grade(walk),
            letters: vec![l],
        }
    }

    /// Compose a letter sequence; `None` when consecutive grades do not
    /// match. The empty sequence has no well-defined grade and is rejected —
    /// use [`Word::unit`].
    pub fn from_letters(walk: &ReciprocalWalk, letters: Vec<Letter>) -> Option<Word> {
        let mut iter = letters.iter();
        let mut grade = iter.next()?.grade(walk);
        for l in iter {
            grade = grade.hcomp(&l.grade(walk))?;
        }
        Some(Word { grade, letters })
    }

    /// Number of non-unit letters.
    pub fn degree(&self) -> usize {
        self.letters.len()
    }

    /// Product of two words; `None` encodes the zero product of
    /// non-composable grades.
    pub fn mul(&self, other: &Word) -> Option<Word> {
        let grade = self.grade.hcomp(&other.grade)?;
        let mut letters = self.letters.clone();
        letters.extend(other.letters.iter().copied());
        Some(Word { grade, letters })
    }

    /// The adjoint word: letters reversed and starred, grade flipped.
    pub fn star(&self) -> Word {
        Word {
            grade: self.grade.star_grade(),
            letters: self.letters.iter().rev().map(Letter::star).collect(),
        }
    }

    /// The contiguous subword `letters[range]` as a word of its own; the
    /// empty range yields the unit at the appropriate column.
    pub fn subword(&self, walk: &ReciprocalWalk, start: usize, end: usize) -> Word {
        if start == end {
            let (a, b) = if start == 0 {
                self.grade.left()
            } else {
                Word::from_letters(walk, self.letters[..start].to_vec())
                    .expect("valid word prefix")
                    .grade
                    .right()
            };
            return Word::unit(a, b);
        }
        Word::from_letters(walk, self.letters[start..end].to_vec()).expect("valid word slice")
    }
}

impl std::fmt::Display for Word {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "1({}|{})", self.grade.k, self.grade.m);
        }
        let parts: Vec<String> = self.letters.iter().map(|l| l.to_string()).collect();
        write!(f, "{}", parts.join("·"))
    }
}

/// A noncommutative polynomial: a finite linear combination of words with
/// nonzero [`Scalar`] coefficients. Grading collapse is built into the
/// arithmetic, so an `NCPoly` is zero iff its term map is empty.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct NCPoly {
    pub terms: BTreeMap<Word, Scalar>,
}

impl NCPoly {
    pub fn zero() -> NCPoly {
        NCPoly::default()
    }

    pub fn from_word(word: Word, coeff: Scalar) -> NCPoly {
        let mut p = NCPoly::zero();
        p.add_term(word, coeff);
        p
    }

    /// The local unit `1(v|w)`.
    pub fn unit(v: Obj, w: Obj) -> NCPoly {
        NCPoly::from_word(Word::unit(v, w), Scalar::one())
    }

    /// The generator `u_{e,f}` or `u_{e,f}*`.
    pub fn gen(walk: &ReciprocalWalk, l: Letter) -> NCPoly {
        NCPoly::from_word(Word::letter(walk, l), Scalar::one())
    }

    /// Accumulate one term, dropping it when the total coefficient vanishes.
    pub fn add_term(&mut self, word: Word, coeff: Scalar) {
        if coeff.is_zero() {
            return;
        }
        let entry = self.terms.entry(word);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let total = o.get().add(&coeff);
                if total.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = total;
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Largest word degree; zero for the zero polynomial.
    pub fn degree(&self) -> usize {
        self.terms.keys().map(Word::degree).max().unwrap_or(0)
    }

    pub fn add(&self, other: &NCPoly) -> NCPoly {
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &NCPoly) -> NCPoly {
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), c.neg());
        }
        out
    }

    pub fn neg(&self) -> NCPoly {
        NCPoly {
            terms: self.terms.iter().map(|(w, c)| (w.clone(), c.neg())).collect(),
        }
    }

    pub fn scale(&self, c: &Scalar, field: &FieldSpec) -> NCPoly {
        let mut out = NCPoly::zero();
        for (w, a) in &self.terms {
            out.add_term(w.clone(), a.mul(c, field));
        }
        out
    }

    pub fn mul(&self, other: &NCPoly, field: &FieldSpec) -> NCPoly {
        let mut out = NCPoly::zero();
        for (w1, c1) in &self.terms {
            for (w2, c2) in &other.terms {
                if let Some(w) = w1.mul(w2) {
                    out.add_term(w, c1.mul(c2, field));
                }
            }
        }
        out
    }

    /// The *-operation: words adjointed, coefficients conjugated.
    pub fn star(&self) -> NCPoly {
        let mut out = NCPoly::zero();
        for (w, c) in &self.terms {
            out.add_term(w.star(), c.star());
        }
        out
    }

    /// Split into grading-homogeneous components.
    pub fn graded_components(&self) -> BTreeMap<Square, NCPoly> {
        let mut out: BTreeMap<Square, NCPoly> = BTreeMap::new();
        for (w, c) in &self.terms {
            out.entry(w.grade)
                .or_default()
                .add_term(w.clone(), c.clone());
        }
        out
    }

    /// The common grade of all terms, if the polynomial is homogeneous;
    /// `None` for zero or mixed-grade polynomials.
    pub fn homogeneous_grade(&self) -> Option<Square> {
        let mut grades = self.terms.keys().map(|w| w.grade);
        let first = grades.next()?;
        grades.all(|g| g == first).then_some(first)
    }

    pub fn render(&self, field: &FieldSpec) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(w, c)| format!("({})·{w}", c.render(field)))
            .collect();
        parts.join(" + ")
    }
}

/// Structured identity of a relation instance, used by the certificate
/// builders.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum RelKind {
    Twist { e: usize, f: usize },
    Col { w: Obj, e: usize, f: usize },
    Row { v: Obj, e: usize, f: usize },
}

/// One instantiated relation: a polynomial asserted to vanish in the
/// quotient. `boundary` marks relations whose defining edge sum is truncated
/// by the walk window; they are carried for completeness but never asserted
/// or used as certification generators.
#[derive(Debug, Clone, PartialEq)]
pub struct Relation {
    pub name: String,
    pub poly: NCPoly,
    pub boundary: bool,
    pub(crate) kind: RelKind,
}

/// The presentation of the walk algebra over a finite window: the walk
/// (whose edge pairs index the `u`-generators) and the instantiated
/// relations. The star-twist relations come first; their indices are kept
/// for the star-elimination rewriting used throughout.
#[derive(Debug, Clone, PartialEq)]
pub struct Presentation {
    pub walk: ReciprocalWalk,
    pub relations: Vec<Relation>,
    /// Index of the star-twist relation for each generator pair `(e, f)`.
    pub(crate) eqint: BTreeMap<(usize, usize), usize>,
    /// The twist coefficient `sgn(e)sgn(f)·√(w(f)/w(e))` per pair.
    pub(crate) twists: BTreeMap<(usize, usize), Scalar>,
}

impl Presentation {
    /// Number of `u`-generators: one per ordered edge pair.
    pub fn generator_count(&self) -> usize {
        self.walk.edges.len() * self.walk.edges.len()
    }

    /// Find a relation index by its exact name.
    pub fn relation_index(&self, name: &str) -> Option<usize> {
        self.relations.iter().position(|r| r.name == name)
    }

    /// The coefficient `c` of the rewriting `u_{e,f}* = c·u_{ē,f̄}`.
    pub fn twist(&self, e: usize, f: usize) -> &Scalar {
        &self.twists[&(e, f)]
    }

    /// A vertex all of whose incident edges stay between interior vertices;
    /// certificates for such vertices only ever consume interior relations.
    pub fn deep(&self, v: Obj) -> bool {
        self.walk.interior.contains(&v)
            && self.walk.edges.iter().all(|edge| {
                (edge.src != v && edge.tgt != v)
                    || (self.walk.interior.contains(&edge.src)
                        && self.walk.interior.contains(&edge.tgt))
            })
    }

    /// All four objects of a square are deep.
    pub fn deep_square(&self, s: &Square) -> bool {
        [s.k, s.l, s.m, s.n].iter().all(|&v| self.deep(v))
    }
}

/// Index the column and row orthogonality relations by their structural
/// identity `(vertex, e, f)`.
pub(crate) fn build_presentation_relation_lookup(
    p: &Presentation,
) -> (
    BTreeMap<(Obj, usize, usize), usize>,
    BTreeMap<(Obj, usize, usize), usize>,
) {
    let mut col = BTreeMap::new();
    let mut row = BTreeMap::new();
    for (i, r) in p.relations.iter().enumerate() {
        match r.kind {
            RelKind::Col { w, e, f } => {
                col.insert((w, e, f), i);
            }
            RelKind::Row { v, e, f } => {
                row.insert((v, e, f), i);
            }
            RelKind::Twist { .. } => {}
        }
    }
    (col, row)
}

/// Instantiate the presentation of a walk window: star-twist relations for
/// every generator pair, then column and row orthogonality at every vertex
/// (flagged as boundary outside the interior). Requires every weight ratio
/// to have a square root in the walk's field.
pub fn build_presentation(walk: &ReciprocalWalk) -> Result<Presentation> {
    let field = walk.field.clone();
    let ne = walk.edges.len();
    let mut relations = Vec::new();
    let mut eqint = BTreeMap::new();
    let mut twists = BTreeMap::new();

    for e in 0..ne {
        for f in 0..ne {
            let we = &walk.edges[e].weight;
            let wf = &walk.edges[f].weight;
            let ratio = wf.mul(
                &we.inv(&field).ok_or_else(|| {
                    Error::NotInvertible(format!("weight of edge {e} has no tower inverse"))
                })?,
                &field,
            );
            let c = ratio
                .sqrt_in(&field)?
                .scale(&int(walk.edges[e].sign * walk.edges[f].sign));
            let mut poly = NCPoly::gen(walk, Letter::UStar { e, f });
            let flipped = Word::letter(
                walk,
                Letter::U {
                    e: walk.edges[e].bar,
                    f: walk.edges[f].bar,
                },
            );
            poly.add_term(flipped, c.neg());
            eqint.insert((e, f), relations.len());
            twists.insert((e, f), c);
            relations.push(Relation {
                name: format!("star-twist(e={e}, f={f})"),
                poly,
                boundary: false,
                kind: RelKind::Twist { e, f },
            });
        }
    }

    for &w in &walk.vertices {
        let incoming = walk.in_edges(w);
        for e in 0..ne {
            for f in 0..ne {
                if walk.edges[e].src != walk.edges[f].src {
                    continue;
                }
                let mut poly = NCPoly::zero();
                for &g in &incoming {
                    let word = Word::from_letters(
                        walk,
                        vec![Letter::UStar { e: g, f: e }, Letter::U { e: g, f }],
                    )
                    .expect("matching sources compose");
                    poly.add_term(word, Scalar::one());
                }
                if e == f {
                    poly.add_term(Word::unit(w, walk.edges[e].tgt), Scalar::one().neg());
                }
                if poly.is_zero() {
                    continue;
                }
                relations.push(Relation {
                    name: format!("column-orthogonality(w={w}, e={e}, f={f})"),
                    poly,
                    boundary: !walk.interior.contains(&w),
                    kind: RelKind::Col { w, e, f },
                });
            }
        }
    }

    for &v in &walk.vertices {
        let outgoing = walk.out_edges(v);
        for e in 0..ne {
            for f in 0..ne {
                if walk.edges[e].tgt != walk.edges[f].tgt {
                    continue;
                }
                let mut poly = NCPoly::zero();
                for &g in &outgoing {
                    let word = Word::from_letters(
                        walk,
                        vec![Letter::U { e, f: g }, Letter::UStar { e: f, f: g }],
                    )
                    .expect("matching targets compose");
                    poly.add_term(word, Scalar::one());
                }
                if e == f {
                    poly.add_term(Word::unit(walk.edges[e].src, v), Scalar::one().neg());
                }
                if poly.is_zero() {
                    continue;
                }
                relations.push(Relation {
                    name: format!("row-orthogonality(v={v}, e={e}, f={f})"),
                    poly,
                    boundary: !walk.interior.contains(&v),
                    kind: RelKind::Row { v, e, f },
                });
            }
        }
    }

    Ok(Presentation {
        walk: walk.clone(),
        relations,
        eqint,
        twists,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;
    use crate::walks::{one_vertex_walk, podles_walk, Edge};
    use std::collections::BTreeSet;

    fn lattice(window: (i64, i64)) -> ReciprocalWalk {
        podles_walk(
            &Scalar::from_rat(rat(1, 2)),
            &Scalar::zero(),
            window,
        )
        .unwrap()
    }

    #[test]
    fn words_absorb_units_and_collapse_grades() {
        let walk = lattice((-2, 2));
        // Edge 4 is 0 -> 1, edge 2 is -1 -> 0, so u(4,2) ∈ A(0 1; -1 0).
        assert_eq!(walk.edges[4].src, 0);
        assert_eq!(walk.edges[2].src, -1);
        let u = NCPoly::gen(&walk, Letter::U { e: 4, f: 2 });
        let f = &walk.field;
        assert_eq!(NCPoly::unit(0, -1).mul(&u, f), u);
        assert_eq!(u.mul(&NCPoly::unit(1, 0), f), u);
        assert!(NCPoly::unit(1, 0).mul(&u, f).is_zero());
        assert!(u.mul(&u, f).is_zero()); // columns (1,0) vs (0,-1) do not meet
        assert_eq!(
            NCPoly::unit(0, -1).mul(&NCPoly::unit(0, -1), f),
            NCPoly::unit(0, -1)
        );
        assert!(NCPoly::unit(0, -1).mul(&NCPoly::unit(1, 0), f).is_zero());
        // star is involutive and flips the grade
        assert_eq!(u.star().star(), u);
        let grade = u.homogeneous_grade().unwrap();
        assert_eq!(
            u.star().homogeneous_grade().unwrap(),
            grade.star_grade()
        );
        // degree-2 product along composable grades
        let v = NCPoly::gen(&walk, Letter::U { e: 6, f: 4 }); // (1 2; 0 1)
        let uv = u.mul(&v, f);
        assert_eq!(uv.degree(), 2);
        assert_eq!(
            uv.homogeneous_grade().unwrap(),
            Square::new(0, 2, -1, 1)
        );
    }

    #[test]
    fn one_vertex_presentation_has_the_expected_relations() {
        let p = build_presentation(&one_vertex_walk()).unwrap();
        assert_eq!(p.generator_count(), 4);
        // 4 star twists + 4 column + 4 row orthogonality instances.
        assert_eq!(p.relations.len(), 12);
        assert!(p.relations.iter().all(|r| !r.boundary));
        // Unit weights: the twist coefficient is the sign product.
        assert_eq!(p.twist(0, 0).as_rat(), Some(rat(1, 1)));
        assert_eq!(p.twist(0, 1).as_rat(), Some(rat(-1, 1)));
        assert_eq!(p.twist(1, 1).as_rat(), Some(rat(1, 1)));
        // Orthogonality relations are homogeneous with unit-square grade.
        for r in &p.relations {
            assert!(r.poly.homogeneous_grade().is_some(), "{}", r.name);
        }
    }

    #[test]
    fn lattice_presentation_counts_and_boundary_flags() {
        let walk = lattice((-2, 2));
        let p = build_presentation(&walk).unwrap();
        // 8 edges → 64 u-generators.
        assert_eq!(p.generator_count(), 64);
        assert_eq!(p.eqint.len(), 64);
        for (name, boundary) in [
            ("column-orthogonality(w=0, e=0, f=0)", false),
            ("column-orthogonality(w=-2, e=1, f=1)", true),
            ("row-orthogonality(v=1, e=0, f=0)", false),
            ("row-orthogonality(v=2, e=6, f=6)", true),
        ] {
            let idx = p.relation_index(name).unwrap_or_else(|| panic!("{name}"));
            assert_eq!(p.relations[idx].boundary, boundary, "{name}");
        }
        // Twist coefficient oracle: edge 4 is 0 -> 1 with weight
        // c(1)/c(0) = (5/2)/2 = 5/4 and sign +1; edge 5 is its reversal
        // with weight 4/5 and sign +1 (q > 0 gives descending sign -sgn(q)
        // = -1... for q = 1/2 the descending sign is -1). So
        // twist(4, 5) = (+1)(-1)·sqrt((4/5)/(5/4)) = -4/5.
        assert_eq!(p.twist(4, 5).as_rat(), Some(rat(-4, 5)));
        assert_eq!(p.twist(4, 4).as_rat(), Some(rat(1, 1)));
        // Deep vertices: interior is [-1, 1], so only 0 has all neighbors
        // interior.
        assert!(p.deep(0));
        assert!(!p.deep(1));
        assert!(!p.deep(-2));
    }

    #[test]
    fn empty_edge_set_gives_the_unit_only_presentation() {
        let walk = ReciprocalWalk {
            field: FieldSpec::rational(),
            t: Scalar::from_int(-2),
            vertices: BTreeSet::from([0, 1]),
            interior: BTreeSet::new(),
            edges: Vec::<Edge>::new(),
        };
        let p = build_presentation(&walk).unwrap();
        assert_eq!(p.generator_count(), 0);
        assert!(p.relations.is_empty());
    }

    #[test]
    fn relation_sets_are_star_closed() {
        // The star of every relation reduces, after star-twist
        // substitution, into the span of the relations: certified by the
        // membership engine at the relation's own degree.
        for walk in [one_vertex_walk(), lattice((-2, 2))] {
            let p = build_presentation(&walk).unwrap();
            for (i, r) in p.relations.iter().enumerate() {
                if r.boundary {
                    continue;
                }
                let starred = r.poly.star();
                let d = starred.degree().max(2);
                let w = ideal_member(&p, &starred, d)
                    .unwrap()
                    .unwrap_or_else(|| panic!("star of relation {i} not certified"));
                assert_eq!(replay_witness(&p, &w), starred, "relation {i}");
            }
        }
    }
}
