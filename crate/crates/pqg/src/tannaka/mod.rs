//! Reconstruction of a partial compact quantum group from concrete fiber
//! data.
//!
//! [`FiberData`] describes a semisimple bigraded tensor category together
//! with a fiber functor in completely finite terms: a list of irreducible
//! labels with hyperobject gradings, the dimensions of the graded fiber
//! spaces `F_kl(a)`, explicit fusion isometries realizing
//! `⊕_l F_kl(a)⊗F_lm(b) ≅ ⊕_c F_km(c)^{⊕ N_ab^c}`, and duality vectors for
//! every irreducible. [`validate_fiber_data`] checks the coherence axioms
//! (isometry, the cocycle condition on triples, unitality, duality snakes)
//! and [`reconstruct`] turns valid data into a full [`PartialHopfData`]:
//! the block `A(k l; m n)` is spanned by matrix-unit functionals on the
//! spaces `Hom(F_mn(a), F_kl(a))`, the coproduct dualizes composition, the
//! product contracts through the fusion isometries, and antipode and star
//! contract through the duality vectors.
//!
//! Built-in generators cover the two basic families: [`pair_groupoid_fiber`]
//! (a trivial category over a finite object set, reconstructing a pair
//! groupoid function algebra) and [`pointed_group_fiber`] (the category of
//! group-graded lines with its canonical fiber functor). [`roundtrip_check`]
//! closes the loop: it decomposes the corepresentations of the reconstructed
//! algebra and compares the irreducible count, the fiber dimensions and the
//! fusion multiplicities against the input data.

mod json;

pub use json::{fiber_from_json, fiber_to_json};

use crate::corep::{decompose, is_irreducible, morphism_space, tensor, verify_corep, Corep};
use crate::error::{Error, Result};
use crate::grading::{BigradedSpace, Obj, Square};
use crate::linalg::Mat;
use crate::partial_hopf::{PartialHopfData, Scan};
use crate::report::VerificationReport;
use crate::scalar::{FieldSpec, Scalar};
use std::collections::{BTreeMap, BTreeSet};

/// An irreducible label of the input category.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Irreducible {
    pub name: String,
    /// Hyperobject bigrading `(λ_a, ρ_a)`.
    pub grading: (Obj, Obj),
    /// `true` for the unit object of its hyperobject (grading `(α, α)`).
    pub unit: bool,
}

/// Concrete fiber-functor data for a semisimple bigraded tensor category.
///
/// Irreducibles are indexed by position in `irreducibles`. All structure
/// tensors are stored over explicit orthonormal bases of the fiber spaces:
///
/// * `iota[(a, b, k, m)]` is the unitary from `⊕_l F_kl(a)⊗F_lm(b)`
///   (columns: `l` ascending, then the pair basis row-major) to the fusion
///   channels of `a⊗b` (rows: channels `c` ascending, multiplicity index,
///   then the basis of `F_km(c)`);
/// * `ev[(a, l)]` is the row vector of the evaluation
///   `⊕_k F_lk(ā)⊗F_kl(a) → ℂ` in the same column layout;
/// * `coev[(a, k)]` is the column vector of the coevaluation
///   `ℂ → ⊕_l F_kl(a)⊗F_lk(ā)`.
///
/// Associators must be strictified into the `iota` tensors: the cocycle
/// check compares the two triple contractions entrywise under the canonical
/// lexicographic channel enumeration.
#[derive(Debug, Clone, PartialEq)]
pub struct FiberData {
    pub field: FieldSpec,
    pub hyperobjects: BTreeSet<Obj>,
    pub objects: BTreeSet<Obj>,
    /// The surjection from objects to hyperobjects.
    pub phi: BTreeMap<Obj, Obj>,
    pub irreducibles: Vec<Irreducible>,
    /// The conjugation involution on irreducible indices.
    pub conj: Vec<usize>,
    /// Fusion multiplicities `N_ab^c`, keyed by `(a, b)` with `ρ_a = λ_b`.
    pub fusion: BTreeMap<(usize, usize), BTreeMap<usize, usize>>,
    /// `dims[(a, k, l)] = dim F_kl(a)`; missing keys are zero.
    pub dims: BTreeMap<(usize, Obj, Obj), usize>,
    pub iota: BTreeMap<(usize, usize, Obj, Obj), Mat>,
    /// Unit identifications `μ_k : F_kk(𝟙) → ℂ` as unitary scalars.
    pub mu: BTreeMap<Obj, Scalar>,
    pub ev: BTreeMap<(usize, Obj), Mat>,
    pub coev: BTreeMap<(usize, Obj), Mat>,
}

impl FiberData {
    pub fn new(field: FieldSpec) -> Self {
        FiberData {
            field,
            hyperobjects: BTreeSet::new(),
            objects: BTreeSet::new(),
            phi: BTreeMap::new(),
            irreducibles: Vec::new(),
            conj: Vec::new(),
            fusion: BTreeMap::new(),
            dims: BTreeMap::new(),
            iota: BTreeMap::new(),
            mu: BTreeMap::new(),
            ev: BTreeMap::new(),
            coev: BTreeMap::new(),
        }
    }

    pub fn irr_count(&self) -> usize {
        self.irreducibles.len()
    }

    pub fn dim(&self, a: usize, k: Obj, l: Obj) -> usize {
        self.dims.get(&(a, k, l)).copied().unwrap_or(0)
    }

    pub fn phi_of(&self, k: Obj) -> Option<Obj> {
        self.phi.get(&k).copied()
    }

    pub fn mu_of(&self, k: Obj) -> Scalar {
        self.mu.get(&k).cloned().unwrap_or_else(Scalar::one)
    }

    /// The unit irreducible of a hyperobject, if declared.
    pub fn unit_label(&self, alpha: Obj) -> Option<usize> {
        self.irreducibles
            .iter()
            .position(|u| u.unit && u.grading == (alpha, alpha))
    }

    pub fn mult(&self, a: usize, b: usize, c: usize) -> usize {
        self.fusion
            .get(&(a, b))
            .and_then(|m| m.get(&c))
            .copied()
            .unwrap_or(0)
    }

    /// Fusion channels of `a⊗b` with their multiplicities, ascending in `c`.
    pub fn channels(&self, a: usize, b: usize) -> Vec<(usize, usize)> {
        self.fusion
            .get(&(a, b))
            .map(|m| m.iter().filter(|(_, &n)| n > 0).map(|(&c, &n)| (c, n)).collect())
            .unwrap_or_default()
    }

    /// Row layout of `iota[(a, b, k, m)]`: `(c, t, offset, dim F_km(c))`.
    pub fn channel_rows(&self, a: usize, b: usize, k: Obj, m: Obj) -> Vec<(usize, usize, usize, usize)> {
        let mut rows = Vec::new();
        let mut off = 0;
        for (c, n) in self.channels(a, b) {
            let d = self.dim(c, k, m);
            for t in 0..n {
                rows.push((c, t, off, d));
                off += d;
            }
        }
        rows
    }

    /// Column layout of `iota[(a, b, k, m)]` and of the duality vectors:
    /// `(l, offset, dim F_kl(a), dim F_lm(b))`.
    pub fn pair_cols(&self, a: usize, b: usize, k: Obj, m: Obj) -> Vec<(Obj, usize, usize, usize)> {
        let mut cols = Vec::new();
        let mut off = 0;
        for &l in &self.objects {
            let d1 = self.dim(a, k, l);
            let d2 = self.dim(b, l, m);
            if d1 > 0 && d2 > 0 {
                cols.push((l, off, d1, d2));
                off += d1 * d2;
            }
        }
        cols
    }

    pub fn iota_mat(&self, a: usize, b: usize, k: Obj, m: Obj) -> Option<&Mat> {
        self.iota.get(&(a, b, k, m))
    }

    /// The irreducibles contributing to the algebra block on `sq`, with the
    /// top and bottom fiber dimensions.
    pub fn components(&self, sq: &Square) -> Vec<(usize, usize, usize)> {
        let (pk, pl, pm, pn) = match (
            self.phi_of(sq.k),
            self.phi_of(sq.l),
            self.phi_of(sq.m),
            self.phi_of(sq.n),
        ) {
            (Some(a), Some(b), Some(c), Some(d)) => (a, b, c, d),
            _ => return Vec::new(),
        };
        let mut out = Vec::new();
        for (a, u) in self.irreducibles.iter().enumerate() {
            if u.grading != (pk, pl) || u.grading != (pm, pn) {
                continue;
            }
            let dt = self.dim(a, sq.k, sq.l);
            let db = self.dim(a, sq.m, sq.n);
            if dt > 0 && db > 0 {
                out.push((a, dt, db));
            }
        }
        out
    }

    pub fn block_dim(&self, sq: &Square) -> usize {
        self.components(sq).iter().map(|&(_, dt, db)| dt * db).sum()
    }

    /// All squares carrying a nonzero algebra block.
    pub fn squares(&self) -> Vec<Square> {
        let mut out = Vec::new();
        for &k in &self.objects {
            for &l in &self.objects {
                for &m in &self.objects {
                    for &n in &self.objects {
                        let sq = Square::new(k, l, m, n);
                        if self.block_dim(&sq) > 0 {
                            out.push(sq);
                        }
                    }
                }
            }
        }
        out
    }

    /// Entry of `ev[(a, l)]` at block `k`, row `q` of `F_lk(ā)`, column `j`
    /// of `F_kl(a)`; zero when absent.
    fn ev_entry(&self, a: usize, l: Obj, k: Obj, q: usize, j: usize) -> Scalar {
        let Some(e) = self.ev.get(&(a, l)) else {
            return Scalar::zero();
        };
        for (kk, off, d1, d2) in self.pair_cols(self.conj[a], a, l, l) {
            if kk == k {
                let idx = off + q * d2 + j;
                if q < d1 && j < d2 && idx < e.cols() {
                    return e.get(0, idx).clone();
                }
            }
        }
        Scalar::zero()
    }

    /// Entry of `coev[(a, k)]` at block `l`, row `i` of `F_kl(a)`, column
    /// `p` of `F_lk(ā)`; zero when absent.
    fn coev_entry(&self, a: usize, k: Obj, l: Obj, i: usize, p: usize) -> Scalar {
        let Some(c) = self.coev.get(&(a, k)) else {
            return Scalar::zero();
        };
        for (ll, off, d1, d2) in self.pair_cols(a, self.conj[a], k, k) {
            if ll == l {
                let idx = off + i * d2 + p;
                if i < d1 && p < d2 && idx < c.rows() {
                    return c.get(idx, 0).clone();
                }
            }
        }
        Scalar::zero()
    }

    /// The scalar `ev ∘ ev*` of an irreducible, when it is defined and
    /// independent of the grading leg.
    pub fn intrinsic_dimension(&self, a: usize) -> Option<Scalar> {
        let f = &self.field;
        let mut out: Option<Scalar> = None;
        for (&(aa, _), e) in &self.ev {
            if aa != a {
                continue;
            }
            let mut s = Scalar::zero();
            for idx in 0..e.cols() {
                let x = e.get(0, idx);
                s = s.add(&x.mul(&x.star(), f));
            }
            match &out {
                None => out = Some(s),
                Some(prev) if *prev == s => {}
                Some(_) => return None,
            }
        }
        out
    }
}

/// Basis layout of a reconstructed block: offsets per contributing
/// irreducible, basis vectors ordered `(a, i, j)` row-major.
struct Layout {
    comps: Vec<(usize, usize, usize, usize)>,
    total: usize,
}

impl Layout {
    fn index(&self, a: usize, i: usize, j: usize) -> Option<usize> {
        self.comps
            .iter()
            .find(|&&(aa, _, _, _)| aa == a)
            .map(|&(_, off, _, db)| off + i * db + j)
    }

    fn labels(&self) -> Vec<(usize, usize, usize)> {
        let mut out = Vec::with_capacity(self.total);
        for &(a, _, dt, db) in &self.comps {
            for i in 0..dt {
                for j in 0..db {
                    out.push((a, i, j));
                }
            }
        }
        out
    }
}

fn layout(fd: &FiberData, sq: &Square) -> Layout {
    let mut comps = Vec::new();
    let mut off = 0;
    for (a, dt, db) in fd.components(sq) {
        comps.push((a, off, dt, db));
        off += dt * db;
    }
    Layout { comps, total: off }
}

fn irr_name(fd: &FiberData, a: usize) -> String {
    fd.irreducibles
        .get(a)
        .map(|u| u.name.clone())
        .unwrap_or_else(|| format!("#{a}"))
}

/// Check all coherence axioms of fiber data: grading support, unitality,
/// fusion grading, isometry of the fusion tensors, the cocycle condition on
/// composable triples, the morphism property of the duality vectors and both
/// snake identities.
pub fn validate_fiber_data(fd: &FiberData) -> VerificationReport {
    let mut rep = VerificationReport::new();
    let f = &fd.field;

    let mut support = Scan::new("tannaka/support");
    for &k in &fd.objects {
        match fd.phi_of(k) {
            Some(alpha) => support.check(fd.hyperobjects.contains(&alpha), || {
                format!("object {k} maps to undeclared hyperobject {alpha}")
            }),
            None => support.check(false, || format!("object {k} has no hyperobject")),
        }
    }
    for &alpha in &fd.hyperobjects {
        support.check(fd.phi.values().any(|&b| b == alpha), || {
            format!("hyperobject {alpha} has no objects")
        });
    }
    support.check(fd.conj.len() == fd.irr_count(), || {
        "conjugation table length mismatch".to_string()
    });
    for (a, u) in fd.irreducibles.iter().enumerate() {
        support.check(
            fd.hyperobjects.contains(&u.grading.0) && fd.hyperobjects.contains(&u.grading.1),
            || format!("irreducible {} has undeclared grading", u.name),
        );
        if let Some(&ab) = fd.conj.get(a) {
            support.check(ab < fd.irr_count() && fd.conj.get(ab) == Some(&a), || {
                format!("conjugation is not an involution at {}", u.name)
            });
            if let Some(ub) = fd.irreducibles.get(ab) {
                support.check(ub.grading == (u.grading.1, u.grading.0), || {
                    format!("conjugate of {} has wrong grading", u.name)
                });
            }
        }
    }
    for (&(a, k, l), &d) in &fd.dims {
        support.check(d > 0, || format!("declared zero dimension at ({a}, {k}, {l})"));
        let ok = a < fd.irr_count()
            && fd.phi_of(k) == Some(fd.irreducibles[a].grading.0)
            && fd.phi_of(l) == Some(fd.irreducibles[a].grading.1);
        support.check(ok, || {
            format!("fiber space of {} at ({k}, {l}) violates the grading", irr_name(fd, a))
        });
    }
    support.emit(&mut rep);

    let mut unital = Scan::new("tannaka/unitality");
    for &alpha in &fd.hyperobjects {
        let units: Vec<usize> = fd
            .irreducibles
            .iter()
            .enumerate()
            .filter(|(_, u)| u.unit && u.grading == (alpha, alpha))
            .map(|(a, _)| a)
            .collect();
        unital.check(units.len() == 1, || {
            format!("hyperobject {alpha} has {} unit labels", units.len())
        });
        let Some(&e) = units.first() else { continue };
        unital.check(fd.conj.get(e) == Some(&e), || {
            format!("unit of hyperobject {alpha} is not selfconjugate")
        });
        for &k in &fd.objects {
            for &l in &fd.objects {
                let d = fd.dim(e, k, l);
                let want = usize::from(k == l && fd.phi_of(k) == Some(alpha));
                unital.check(d == want, || {
                    format!("unit fiber dimension at ({k}, {l}) is {d}, expected {want}")
                });
            }
        }
    }
    for u in fd.irreducibles.iter().filter(|u| u.unit) {
        unital.check(u.grading.0 == u.grading.1, || {
            format!("unit label {} has off-diagonal grading", u.name)
        });
    }
    for (&k, m) in &fd.mu {
        unital.check(m.mul(&m.star(), f).is_one(), || {
            format!("unit identification at object {k} is not unitary")
        });
    }
    // Fusion with a unit is trivial and the corresponding fusion tensors are
    // the unit identifications.
    for (a, u) in fd.irreducibles.iter().enumerate() {
        if !u.unit {
            continue;
        }
        for (b, v) in fd.irreducibles.iter().enumerate() {
            if v.grading.0 == u.grading.0 {
                for (c, n) in fd.channels(a, b) {
                    unital.check(c == b && n == 1, || {
                        format!("fusion of {} with {} is not trivial", u.name, v.name)
                    });
                }
            }
            if v.grading.1 == u.grading.0 {
                for (c, n) in fd.channels(b, a) {
                    unital.check(c == b && n == 1, || {
                        format!("fusion of {} with {} is not trivial", v.name, u.name)
                    });
                }
            }
        }
    }
    for (&(a, b, k, m), mat) in &fd.iota {
        let left_unit = fd.irreducibles.get(a).map(|u| u.unit) == Some(true);
        let right_unit = fd.irreducibles.get(b).map(|u| u.unit) == Some(true);
        if !left_unit && !right_unit {
            continue;
        }
        let scale = if left_unit { fd.mu_of(k) } else { fd.mu_of(m) };
        let d = if left_unit { fd.dim(b, k, m) } else { fd.dim(a, k, m) };
        let want = Mat::identity(d).scale(&scale, f);
        unital.check(*mat == want, || {
            format!("unit-leg fusion tensor at ({a}, {b}, {k}, {m}) is not the unit identification")
        });
    }
    unital.emit(&mut rep);

    let mut fusion = Scan::new("tannaka/fusion-grading");
    for (&(a, b), chan) in &fd.fusion {
        let (Some(u), Some(v)) = (fd.irreducibles.get(a), fd.irreducibles.get(b)) else {
            fusion.check(false, || format!("fusion key ({a}, {b}) out of range"));
            continue;
        };
        fusion.check(u.grading.1 == v.grading.0, || {
            format!("fusion of non-composable pair ({}, {})", u.name, v.name)
        });
        for (&c, &n) in chan {
            if n == 0 {
                continue;
            }
            let Some(w) = fd.irreducibles.get(c) else {
                fusion.check(false, || format!("fusion channel {c} out of range"));
                continue;
            };
            fusion.check(w.grading == (u.grading.0, v.grading.1), || {
                format!("channel {} of {}⊗{} violates the grading", w.name, u.name, v.name)
            });
        }
    }
    for (a, u) in fd.irreducibles.iter().enumerate() {
        let Some(&ab) = fd.conj.get(a) else { continue };
        if ab >= fd.irr_count() {
            continue;
        }
        let left = fd.unit_label(u.grading.0);
        let right = fd.unit_label(u.grading.1);
        if let Some(e) = left {
            fusion.check(fd.mult(a, ab, e) == 1, || {
                format!("{}⊗{} does not contain the unit once", u.name, irr_name(fd, ab))
            });
        }
        if let Some(e) = right {
            fusion.check(fd.mult(ab, a, e) == 1, || {
                format!("{}⊗{} does not contain the unit once", irr_name(fd, ab), u.name)
            });
        }
    }
    fusion.emit(&mut rep);

    let mut isom = Scan::new("tannaka/iota-isometry");
    for &k in &fd.objects {
        for &m in &fd.objects {
            for a in 0..fd.irr_count() {
                for b in 0..fd.irr_count() {
                    if fd.irreducibles[a].grading.1 != fd.irreducibles[b].grading.0 {
                        continue;
                    }
                    let dom: usize = fd.pair_cols(a, b, k, m).iter().map(|&(_, _, d1, d2)| d1 * d2).sum();
                    let cod: usize = fd.channel_rows(a, b, k, m).iter().map(|&(_, _, _, d)| d).sum();
                    let mat = fd.iota_mat(a, b, k, m);
                    if dom == 0 && cod == 0 {
                        isom.check(mat.is_none(), || {
                            format!("superfluous fusion tensor at ({a}, {b}, {k}, {m})")
                        });
                        continue;
                    }
                    let Some(mat) = mat else {
                        isom.check(false, || {
                            format!(
                                "missing fusion tensor for {}⊗{} at ({k}, {m})",
                                irr_name(fd, a),
                                irr_name(fd, b)
                            )
                        });
                        continue;
                    };
                    if (mat.rows(), mat.cols()) != (cod, dom) {
                        isom.check(false, || {
                            format!(
                                "fusion tensor for {}⊗{} at ({k}, {m}) has shape {}×{}, expected {cod}×{dom}",
                                irr_name(fd, a),
                                irr_name(fd, b),
                                mat.rows(),
                                mat.cols()
                            )
                        });
                        continue;
                    }
                    let adj = mat.adjoint();
                    let ok = adj.mul(mat, f) == Mat::identity(dom) && mat.mul(&adj, f) == Mat::identity(cod);
                    isom.check(ok, || {
                        format!(
                            "fusion tensor for {}⊗{} at ({k}, {m}) is not unitary",
                            irr_name(fd, a),
                            irr_name(fd, b)
                        )
                    });
                }
            }
        }
    }
    isom.emit(&mut rep);

    rep.merge(validate_cocycle(fd));
    rep.merge(validate_duality(fd));
    rep
}

/// The strict cocycle condition: on each composable triple `(a, b, c)` and
/// each pair of end objects, contracting through `(a⊗b)⊗c` and through
/// `a⊗(b⊗c)` gives the same matrix under the lexicographic enumeration of
/// double fusion channels.
fn validate_cocycle(fd: &FiberData) -> VerificationReport {
    let mut rep = VerificationReport::new();
    let f = &fd.field;
    let mut scan = Scan::new("tannaka/cocycle");
    let n_irr = fd.irr_count();
    for a in 0..n_irr {
        for b in 0..n_irr {
            if fd.irreducibles[a].grading.1 != fd.irreducibles[b].grading.0 {
                continue;
            }
            for c in 0..n_irr {
                if fd.irreducibles[b].grading.1 != fd.irreducibles[c].grading.0 {
                    continue;
                }
                for &k in &fd.objects {
                    for &n in &fd.objects {
                        check_triple(fd, f, &mut scan, (a, b, c), k, n);
                    }
                }
            }
        }
    }
    scan.emit(&mut rep);
    rep
}

fn check_triple(
    fd: &FiberData,
    f: &FieldSpec,
    scan: &mut Scan,
    (a, b, c): (usize, usize, usize),
    k: Obj,
    n: Obj,
) {
    // Columns of the triple domain ⊕_{l,m} F_kl(a)⊗F_lm(b)⊗F_mn(c).
    let mut cols = Vec::new();
    for &l in &fd.objects {
        let d1 = fd.dim(a, k, l);
        if d1 == 0 {
            continue;
        }
        for &m in &fd.objects {
            let (d2, d3) = (fd.dim(b, l, m), fd.dim(c, m, n));
            if d2 == 0 || d3 == 0 {
                continue;
            }
            for i in 0..d1 {
                for j in 0..d2 {
                    for h in 0..d3 {
                        cols.push((l, m, i, j, h));
                    }
                }
            }
        }
    }
    if cols.is_empty() {
        return;
    }
    let witness = || {
        format!(
            "triple ({}, {}, {}) at end objects ({k}, {n})",
            irr_name(fd, a),
            irr_name(fd, b),
            irr_name(fd, c)
        )
    };

    // Left contraction: rows keyed (e, d, t, u, w), enumerating the double
    // channels of (a⊗b)⊗c.
    let mut left: BTreeMap<(usize, usize, usize, usize, usize), Vec<Scalar>> = BTreeMap::new();
    for (d, nd) in fd.channels(a, b) {
        for t in 0..nd {
            for (e, ne) in fd.channels(d, c) {
                for u in 0..ne {
                    for w in 0..fd.dim(e, k, n) {
                        left.insert((e, d, t, u, w), vec![Scalar::zero(); cols.len()]);
                    }
                }
            }
        }
    }
    for (pos, &(l, m, i, j, h)) in cols.iter().enumerate() {
        let Some(i_ab) = fd.iota_mat(a, b, k, m) else { continue };
        let col_ab = fd
            .pair_cols(a, b, k, m)
            .iter()
            .find(|&&(ll, _, _, _)| ll == l)
            .map(|&(_, off, _, d2)| off + i * d2 + j);
        let Some(col_ab) = col_ab else { continue };
        for (d, t, off_d, dim_d) in fd.channel_rows(a, b, k, m) {
            let Some(i_dc) = fd.iota_mat(d, c, k, n) else { continue };
            let col_base = fd
                .pair_cols(d, c, k, n)
                .iter()
                .find(|&&(mm, _, _, _)| mm == m)
                .map(|&(_, off, _, d2)| (off, d2));
            let Some((off_m, d3)) = col_base else { continue };
            for x in 0..dim_d {
                let amp = i_ab.get(off_d + x, col_ab).clone();
                if amp.is_zero() {
                    continue;
                }
                for (e, u, off_e, dim_e) in fd.channel_rows(d, c, k, n) {
                    for w in 0..dim_e {
                        let v = i_dc.get(off_e + w, off_m + x * d3 + h).mul(&amp, f);
                        if v.is_zero() {
                            continue;
                        }
                        if let Some(row) = left.get_mut(&(e, d, t, u, w)) {
                            row[pos] = row[pos].add(&v);
                        }
                    }
                }
            }
        }
    }

    // Right contraction: rows keyed (e, e', u', u, w), enumerating the
    // double channels of a⊗(b⊗c).
    let mut right: BTreeMap<(usize, usize, usize, usize, usize), Vec<Scalar>> = BTreeMap::new();
    for (ep, np) in fd.channels(b, c) {
        for up in 0..np {
            for (e, ne) in fd.channels(a, ep) {
                for u in 0..ne {
                    for w in 0..fd.dim(e, k, n) {
                        right.insert((e, ep, up, u, w), vec![Scalar::zero(); cols.len()]);
                    }
                }
            }
        }
    }
    for (pos, &(l, m, i, j, h)) in cols.iter().enumerate() {
        let Some(i_bc) = fd.iota_mat(b, c, l, n) else { continue };
        let col_bc = fd
            .pair_cols(b, c, l, n)
            .iter()
            .find(|&&(mm, _, _, _)| mm == m)
            .map(|&(_, off, _, d3)| off + j * d3 + h);
        let Some(col_bc) = col_bc else { continue };
        for (ep, up, off_ep, dim_ep) in fd.channel_rows(b, c, l, n) {
            let Some(i_ae) = fd.iota_mat(a, ep, k, n) else { continue };
            let col_base = fd
                .pair_cols(a, ep, k, n)
                .iter()
                .find(|&&(ll, _, _, _)| ll == l)
                .map(|&(_, off, _, d2)| (off, d2));
            let Some((off_l, d2)) = col_base else { continue };
            for y in 0..dim_ep {
                let amp = i_bc.get(off_ep + y, col_bc).clone();
                if amp.is_zero() {
                    continue;
                }
                for (e, u, off_e, dim_e) in fd.channel_rows(a, ep, k, n) {
                    for w in 0..dim_e {
                        let v = i_ae.get(off_e + w, off_l + i * d2 + y).mul(&amp, f);
                        if v.is_zero() {
                            continue;
                        }
                        if let Some(row) = right.get_mut(&(e, ep, up, u, w)) {
                            row[pos] = row[pos].add(&v);
                        }
                    }
                }
            }
        }
    }

    // Compare the two contractions row by row, grouped per final channel in
    // lexicographic order of the intermediate channel indices.
    let collect = |map: BTreeMap<(usize, usize, usize, usize, usize), Vec<Scalar>>| {
        let mut per_e: BTreeMap<usize, Vec<Vec<Scalar>>> = BTreeMap::new();
        for ((e, _, _, _, _), row) in map {
            per_e.entry(e).or_default().push(row);
        }
        per_e
    };
    scan.check(collect(left) == collect(right), witness);
}

/// Duality checks: evaluation and coevaluation factor through the unit
/// channel of the relevant fusion tensor with a leg-independent scalar, and
/// both snake contractions are the identity.
fn validate_duality(fd: &FiberData) -> VerificationReport {
    let mut rep = VerificationReport::new();
    let f = &fd.field;
    let mut morph = Scan::new("tannaka/duality-morphism");
    let mut snake = Scan::new("tannaka/snake");
    let mut scale = Scan::new("tannaka/duality-scale");

    for a in 0..fd.irr_count() {
        let Some(&ab) = fd.conj.get(a) else { continue };
        if ab >= fd.irr_count() {
            continue;
        }
        let name = irr_name(fd, a);
        let (lambda, rho) = fd.irreducibles[a].grading;

        // ev[(a, l)] must be a scalar multiple of the unit-channel row of
        // the fusion tensor of ā⊗a at (l, l); the scalar may not depend
        // on l.
        let mut ev_scalar: Option<Scalar> = None;
        if let Some(e_unit) = fd.unit_label(rho) {
            for &l in &fd.objects {
                let dom: usize = fd.pair_cols(ab, a, l, l).iter().map(|&(_, _, d1, d2)| d1 * d2).sum();
                let e = fd.ev.get(&(a, l));
                if dom == 0 {
                    morph.check(e.is_none(), || format!("superfluous evaluation of {name} at {l}"));
                    continue;
                }
                let (Some(e), Some(im)) = (e, fd.iota_mat(ab, a, l, l)) else {
                    morph.check(false, || format!("missing evaluation data for {name} at {l}"));
                    continue;
                };
                if (e.rows(), e.cols()) != (1, dom) {
                    morph.check(false, || format!("evaluation of {name} at {l} has wrong shape"));
                    continue;
                }
                let row = fd
                    .channel_rows(ab, a, l, l)
                    .iter()
                    .find(|&&(c, t, _, _)| c == e_unit && t == 0)
                    .map(|&(_, _, off, _)| off);
                let Some(row) = row else {
                    morph.check(false, || format!("{name} has no unit channel at {l}"));
                    continue;
                };
                let mut s: Option<Scalar> = None;
                let mut ok = true;
                for idx in 0..dom {
                    let base = im.get(row, idx);
                    let have = e.get(0, idx);
                    match (&s, base.is_zero()) {
                        (_, true) => ok &= have.is_zero(),
                        (None, false) => match base.inv(f) {
                            Some(inv) => s = Some(have.mul(&inv, f)),
                            None => ok = false,
                        },
                        (Some(s), false) => ok &= *have == s.mul(base, f),
                    }
                }
                morph.check(ok && s.is_some(), || {
                    format!("evaluation of {name} at {l} does not factor through the unit channel")
                });
                if let Some(s) = s {
                    match &ev_scalar {
                        None => ev_scalar = Some(s),
                        Some(prev) => scale.check(*prev == s, || {
                            format!("evaluation scalar of {name} depends on the grading leg")
                        }),
                    }
                }
            }
        }

        // coev[(a, k)] must be a scalar multiple of the adjoint unit-channel
        // row of the fusion tensor of a⊗ā at (k, k).
        let mut coev_scalar: Option<Scalar> = None;
        if let Some(e_unit) = fd.unit_label(lambda) {
            for &k in &fd.objects {
                let dom: usize = fd.pair_cols(a, ab, k, k).iter().map(|&(_, _, d1, d2)| d1 * d2).sum();
                let c = fd.coev.get(&(a, k));
                if dom == 0 {
                    morph.check(c.is_none(), || format!("superfluous coevaluation of {name} at {k}"));
                    continue;
                }
                let (Some(c), Some(im)) = (c, fd.iota_mat(a, ab, k, k)) else {
                    morph.check(false, || format!("missing coevaluation data for {name} at {k}"));
                    continue;
                };
                if (c.rows(), c.cols()) != (dom, 1) {
                    morph.check(false, || format!("coevaluation of {name} at {k} has wrong shape"));
                    continue;
                }
                let row = fd
                    .channel_rows(a, ab, k, k)
                    .iter()
                    .find(|&&(cc, t, _, _)| cc == e_unit && t == 0)
                    .map(|&(_, _, off, _)| off);
                let Some(row) = row else {
                    morph.check(false, || format!("{name} has no unit channel at {k}"));
                    continue;
                };
                let mut s: Option<Scalar> = None;
                let mut ok = true;
                for idx in 0..dom {
                    let base = im.get(row, idx).star();
                    let have = c.get(idx, 0);
                    match (&s, base.is_zero()) {
                        (_, true) => ok &= have.is_zero(),
                        (None, false) => match base.inv(f) {
                            Some(inv) => s = Some(have.mul(&inv, f)),
                            None => ok = false,
                        },
                        (Some(s), false) => ok &= *have == s.mul(&base, f),
                    }
                }
                morph.check(ok && s.is_some(), || {
                    format!("coevaluation of {name} at {k} does not factor through the unit channel")
                });
                if let Some(s) = s {
                    match &coev_scalar {
                        None => coev_scalar = Some(s),
                        Some(prev) => scale.check(*prev == s, || {
                            format!("coevaluation scalar of {name} depends on the grading leg")
                        }),
                    }
                }
            }
        }

        // Snake identities, per nonzero fiber space.
        for &k in &fd.objects {
            for &l in &fd.objects {
                let d = fd.dim(a, k, l);
                let db = fd.dim(ab, l, k);
                if d == 0 && db == 0 {
                    continue;
                }
                snake.check(d == db, || {
                    format!("fiber dimensions of {name} and its conjugate differ at ({k}, {l})")
                });
                if d != db {
                    continue;
                }
                let cmat = Mat::from_fn(d, db, |i, p| fd.coev_entry(a, k, l, i, p));
                let emat = Mat::from_fn(db, d, |q, j| fd.ev_entry(a, l, k, q, j));
                let ok = cmat.mul(&emat, f) == Mat::identity(d) && emat.mul(&cmat, f) == Mat::identity(db);
                snake.check(ok, || format!("snake identity fails for {name} at ({k}, {l})"));
            }
        }
    }
    morph.emit(&mut rep);
    snake.emit(&mut rep);
    scale.emit(&mut rep);
    rep
}

/// The reconstructed algebra together with the provenance of its basis.
#[derive(Debug, Clone)]
pub struct ReconstructionOutput {
    pub data: PartialHopfData,
    /// For every block, the `(irreducible, row, column)` of the matrix-unit
    /// functional behind each basis vector.
    pub provenance: BTreeMap<Square, Vec<(usize, usize, usize)>>,
}

/// Reconstruct a partial Hopf algebra with star structure and integral from
/// validated fiber data.
///
/// The block on a square collects, per contributing irreducible, the
/// functionals on linear maps between the bottom and top fiber spaces; the
/// basis consists of matrix-unit functionals. The coproduct dualizes
/// composition, the counit evaluates on identity maps, the product
/// contracts matrix units through the fusion tensors, units and integral
/// live on the unit irreducibles, and antipode and star contract through
/// the duality vectors.
pub fn reconstruct(fd: &FiberData) -> Result<ReconstructionOutput> {
    let rep = validate_fiber_data(fd);
    if !rep.no_failures() {
        let detail = rep
            .failures()
            .next()
            .and_then(|c| c.witness.clone())
            .unwrap_or_else(|| rep.summary());
        return Err(Error::Precondition(format!("invalid fiber data: {detail}")));
    }
    let f = fd.field.clone();
    let mut data = PartialHopfData::new(f.clone(), fd.objects.iter().copied());
    let squares = fd.squares();
    let mut layouts: BTreeMap<Square, Layout> = BTreeMap::new();
    for &sq in &squares {
        let lay = layout(fd, &sq);
        data.add_block(sq, lay.total);
        layouts.insert(sq, lay);
    }
    let provenance: BTreeMap<Square, Vec<(usize, usize, usize)>> = layouts
        .iter()
        .map(|(sq, lay)| (*sq, lay.labels()))
        .collect();

    // Coproduct: matrix-unit functionals split along intermediate indices.
    for &sq in &squares {
        let lay = &layouts[&sq];
        for &r in &fd.objects {
            for &s in &fd.objects {
                let up = Square::new(sq.k, sq.l, r, s);
                let down = Square::new(r, s, sq.m, sq.n);
                let (up_lay, down_lay) = (layout(fd, &up), layout(fd, &down));
                if up_lay.total == 0 || down_lay.total == 0 {
                    continue;
                }
                let mut mats = Vec::with_capacity(lay.total);
                for (a, i, j) in lay.labels() {
                    let mut m = Mat::zeros(up_lay.total, down_lay.total);
                    for p in 0..fd.dim(a, r, s) {
                        if let (Some(ri), Some(ci)) = (up_lay.index(a, i, p), down_lay.index(a, p, j)) {
                            m.set(ri, ci, Scalar::one());
                        }
                    }
                    mats.push(m);
                }
                data.set_coproduct(sq, (r, s), mats);
            }
        }
    }

    // Counit on diagonal blocks: evaluation on the identity map.
    for &sq in &squares {
        if sq.top() != sq.bottom() {
            continue;
        }
        let coeffs = layouts[&sq]
            .labels()
            .into_iter()
            .map(|(_, i, j)| if i == j { Scalar::one() } else { Scalar::zero() })
            .collect();
        data.set_counit(sq, coeffs);
    }

    // Product: contract matrix units through the fusion tensors.
    for &sq in &squares {
        for &lsq in &squares {
            let Some(out) = sq.hcomp(&lsq) else { continue };
            let (lay_k, lay_l) = (&layouts[&sq], &layouts[&lsq]);
            let lay_out = layout(fd, &out);
            let mut table = vec![vec![vec![Scalar::zero(); lay_out.total]; lay_l.total]; lay_k.total];
            for (xi, (a, i, j)) in lay_k.labels().into_iter().enumerate() {
                for (yi, (b, r, s)) in lay_l.labels().into_iter().enumerate() {
                    if fd.fusion.get(&(a, b)).is_none() {
                        return Err(Error::Precondition(format!(
                            "missing fusion data for {}⊗{}",
                            irr_name(fd, a),
                            irr_name(fd, b)
                        )));
                    }
                    let (Some(i_top), Some(i_bot)) = (
                        fd.iota_mat(a, b, out.k, out.l),
                        fd.iota_mat(a, b, out.m, out.n),
                    ) else {
                        return Err(Error::Precondition(format!(
                            "missing fusion tensor for {}⊗{}",
                            irr_name(fd, a),
                            irr_name(fd, b)
                        )));
                    };
                    let top_col = fd
                        .pair_cols(a, b, out.k, out.l)
                        .iter()
                        .find(|&&(ll, _, _, _)| ll == sq.l)
                        .map(|&(_, off, _, d2)| off + i * d2 + r);
                    let bot_col = fd
                        .pair_cols(a, b, out.m, out.n)
                        .iter()
                        .find(|&&(nn, _, _, _)| nn == sq.n)
                        .map(|&(_, off, _, d2)| off + j * d2 + s);
                    let (Some(top_col), Some(bot_col)) = (top_col, bot_col) else { continue };
                    let top_rows = fd.channel_rows(a, b, out.k, out.l);
                    let bot_rows = fd.channel_rows(a, b, out.m, out.n);
                    for &(c, t, off_u, dim_u) in &top_rows {
                        let Some(&(_, _, off_v, dim_v)) = bot_rows
                            .iter()
                            .find(|&&(cc, tt, _, _)| cc == c && tt == t)
                        else {
                            continue;
                        };
                        for u in 0..dim_u {
                            let amp = i_top.get(off_u + u, top_col).star();
                            if amp.is_zero() {
                                continue;
                            }
                            for v in 0..dim_v {
                                let w = amp.mul(i_bot.get(off_v + v, bot_col), &f);
                                if w.is_zero() {
                                    continue;
                                }
                                if let Some(zi) = lay_out.index(c, u, v) {
                                    table[xi][yi][zi] = table[xi][yi][zi].add(&w);
                                }
                            }
                        }
                    }
                }
            }
            data.set_product(sq, lsq, table);
        }
    }

    // Units and integral live on the unit irreducibles.
    for &k in &fd.objects {
        for &m in &fd.objects {
            if fd.phi_of(k) != fd.phi_of(m) {
                continue;
            }
            let alpha = fd.phi_of(k).expect("validated object");
            let Some(e) = fd.unit_label(alpha) else { continue };
            let sq = Square::unit(k, m);
            let Some(lay) = layouts.get(&sq) else { continue };
            let Some(idx) = lay.index(e, 0, 0) else { continue };
            let (mk, mm) = (fd.mu_of(k), fd.mu_of(m));
            let mut unit_coeffs = vec![Scalar::zero(); lay.total];
            unit_coeffs[idx] = mk.mul(&mm.star(), &f);
            data.set_unit(k, m, unit_coeffs);
            let mut int_coeffs = vec![Scalar::zero(); lay.total];
            int_coeffs[idx] = mk.star().mul(&mm, &f);
            data.set_integral(k, m, int_coeffs);
        }
    }

    // Antipode and star: contract through the duality vectors.
    for &sq in &squares {
        let lay = &layouts[&sq];
        let s_sq = sq.circ_bullet();
        let s_lay = layout(fd, &s_sq);
        let mut s_mat = Mat::zeros(s_lay.total, lay.total);
        let star_sq = sq.star_grade();
        let star_lay = layout(fd, &star_sq);
        let mut star_mat = Mat::zeros(star_lay.total, lay.total);
        for (col, (a, i, j)) in lay.labels().into_iter().enumerate() {
            let ab = fd.conj[a];
            for q in 0..fd.dim(ab, sq.n, sq.m) {
                for p in 0..fd.dim(ab, sq.l, sq.k) {
                    let Some(row) = s_lay.index(ab, q, p) else { continue };
                    let v = fd
                        .coev_entry(a, sq.k, sq.l, i, p)
                        .mul(&fd.ev_entry(a, sq.n, sq.m, q, j), &f);
                    if !v.is_zero() {
                        s_mat.set(row, col, v);
                    }
                }
            }
            for al in 0..fd.dim(ab, sq.l, sq.k) {
                for be in 0..fd.dim(ab, sq.n, sq.m) {
                    let Some(row) = star_lay.index(ab, al, be) else { continue };
                    let v = fd
                        .coev_entry(a, sq.m, sq.n, j, be)
                        .mul(&fd.ev_entry(a, sq.l, sq.k, al, i), &f);
                    if !v.is_zero() {
                        star_mat.set(row, col, v);
                    }
                }
            }
        }
        data.set_antipode(sq, s_mat);
        data.set_star(sq, star_mat);
    }

    Ok(ReconstructionOutput { data, provenance })
}

/// The canonical irreducible corepresentation of the reconstructed algebra
/// attached to an input irreducible: the carrier is the fiber of `a` and
/// the block matrices are the matrix units dual to the basis functionals.
pub fn canonical_corep(fd: &FiberData, out: &ReconstructionOutput, a: usize) -> Corep {
    let mut carrier = BigradedSpace::new(fd.objects.iter().copied());
    for &k in &fd.objects {
        for &l in &fd.objects {
            carrier.set_dim(k, l, fd.dim(a, k, l));
        }
    }
    let mut x = Corep::new(carrier);
    for (sq, labels) in &out.provenance {
        let rows = fd.dim(a, sq.k, sq.l);
        let cols = fd.dim(a, sq.m, sq.n);
        if rows == 0 || cols == 0 {
            continue;
        }
        let mats = labels
            .iter()
            .map(|&(b, i, j)| {
                let mut m = Mat::zeros(rows, cols);
                if b == a {
                    m.set(i, j, Scalar::one());
                }
                m
            })
            .collect();
        x.set_block(&out.data, *sq, mats);
    }
    x
}

/// Reconstruct and compare the corepresentation theory of the output with
/// the input data: the canonical corepresentations must be irreducible and
/// exhaustive, their carriers must have the input fiber dimensions, and
/// tensor-product decompositions must reproduce the fusion multiplicities.
pub fn roundtrip_check(fd: &FiberData) -> Result<VerificationReport> {
    let out = reconstruct(fd)?;
    let data = &out.data;
    let mut rep = VerificationReport::new();

    let present: Vec<usize> = (0..fd.irr_count())
        .filter(|&a| fd.dims.keys().any(|&(b, _, _)| b == a))
        .collect();
    let canon: BTreeMap<usize, Corep> = present
        .iter()
        .map(|&a| (a, canonical_corep(fd, &out, a)))
        .collect();

    let mut irr = Scan::new("tannaka/roundtrip-irreducible");
    for (&a, x) in &canon {
        irr.check(verify_corep(data, x).all_passed(), || {
            format!("canonical corepresentation of {} fails the axioms", irr_name(fd, a))
        });
        irr.check(is_irreducible(data, x), || {
            format!("canonical corepresentation of {} is reducible", irr_name(fd, a))
        });
    }
    for (&a, x) in &canon {
        for (&b, y) in &canon {
            if a < b {
                irr.check(morphism_space(data, x, y).is_empty(), || {
                    format!(
                        "canonical corepresentations of {} and {} are equivalent",
                        irr_name(fd, a),
                        irr_name(fd, b)
                    )
                });
            }
        }
    }
    irr.emit(&mut rep);

    let enumerated = crate::corep::enumerate_irreducibles(data)?;
    rep.record(
        "tannaka/roundtrip-count",
        enumerated.len() == present.len(),
        format!(
            "found {} irreducible classes, input has {}",
            enumerated.len(),
            present.len()
        ),
    );

    let mut dims = Scan::new("tannaka/roundtrip-dims");
    for x in &enumerated {
        let mates: Vec<usize> = canon
            .iter()
            .filter(|(_, y)| !morphism_space(data, x, y).is_empty())
            .map(|(&a, _)| a)
            .collect();
        dims.check(mates.len() == 1, || {
            format!("an enumerated irreducible matches {} input labels", mates.len())
        });
        if let [a] = mates[..] {
            let ok = fd.objects.iter().all(|&k| {
                fd.objects
                    .iter()
                    .all(|&l| x.carrier.dim(k, l) == fd.dim(a, k, l))
            });
            dims.check(ok, || {
                format!("carrier dimensions of {} differ from the fiber", irr_name(fd, a))
            });
        }
    }
    dims.emit(&mut rep);

    let mut fus = Scan::new("tannaka/roundtrip-fusion");
    for &a in &present {
        for &b in &present {
            if fd.irreducibles[a].grading.1 != fd.irreducibles[b].grading.0 {
                continue;
            }
            let t = tensor(data, &canon[&a], &canon[&b]);
            if t.total_dim() == 0 {
                let flat = fd.channels(a, b).iter().all(|&(c, _)| {
                    canon.get(&c).map(|x| x.total_dim() == 0).unwrap_or(true)
                });
                fus.check(flat, || {
                    format!("empty tensor product {}⊗{}", irr_name(fd, a), irr_name(fd, b))
                });
                continue;
            }
            let summands = decompose(data, &t)?;
            let mut found: BTreeMap<usize, usize> = BTreeMap::new();
            for s in &summands {
                let mates: Vec<usize> = canon
                    .iter()
                    .filter(|(_, y)| !morphism_space(data, &s.corep, y).is_empty())
                    .map(|(&c, _)| c)
                    .collect();
                fus.check(mates.len() == 1, || {
                    format!(
                        "a summand of {}⊗{} matches {} input labels",
                        irr_name(fd, a),
                        irr_name(fd, b),
                        mates.len()
                    )
                });
                if let [c] = mates[..] {
                    *found.entry(c).or_insert(0) += s.multiplicity();
                }
            }
            let want: BTreeMap<usize, usize> = fd
                .channels(a, b)
                .into_iter()
                .filter(|&(c, _)| canon.get(&c).map(|x| x.total_dim() > 0).unwrap_or(false))
                .collect();
            fus.check(found == want, || {
                format!(
                    "fusion of {}⊗{}: decomposed {:?}, input {:?}",
                    irr_name(fd, a),
                    irr_name(fd, b),
                    found,
                    want
                )
            });
        }
    }
    fus.emit(&mut rep);

    Ok(rep)
}

/// Fiber data of a trivial category over a disjoint union of object
/// classes: one hyperobject and one unit irreducible per class, with
/// `F_kl(𝟙) = δ_kl ℂ` inside each class.
pub fn groupoid_fiber(classes: &[Vec<Obj>]) -> FiberData {
    let mut fd = FiberData::new(FieldSpec::rational());
    for (ci, class) in classes.iter().enumerate() {
        assert!(!class.is_empty(), "empty class");
        let alpha = ci as Obj;
        fd.hyperobjects.insert(alpha);
        fd.irreducibles.push(Irreducible {
            name: format!("1({alpha})"),
            grading: (alpha, alpha),
            unit: true,
        });
        fd.conj.push(ci);
        fd.fusion.insert((ci, ci), BTreeMap::from([(ci, 1)]));
        for &k in class {
            assert!(fd.objects.insert(k), "object {k} in two classes");
            fd.phi.insert(k, alpha);
            fd.dims.insert((ci, k, k), 1);
            fd.iota.insert((ci, ci, k, k), Mat::identity(1));
            fd.mu.insert(k, Scalar::one());
            fd.ev.insert((ci, k), Mat::identity(1));
            fd.coev.insert((ci, k), Mat::identity(1));
        }
    }
    fd
}

/// Fiber data of the one-hyperobject trivial category over a finite object
/// set; its reconstruction is the pair groupoid function algebra.
pub fn pair_groupoid_fiber(objects: &[Obj]) -> Result<FiberData> {
    if objects.is_empty() {
        return Err(Error::Precondition("empty object set".into()));
    }
    Ok(groupoid_fiber(&[objects.to_vec()]))
}

/// The multiplication table of the cyclic group of order `n`, with the
/// identity at index `0`.
pub fn cyclic_table(n: usize) -> Vec<Vec<usize>> {
    assert!(n > 0);
    (0..n).map(|g| (0..n).map(|h| (g + h) % n).collect()).collect()
}

/// Fiber data of the category of lines graded over a finite group, with its
/// canonical fiber functor `F_kl(u_g) = δ_{k, g·l} ℂ` over the object set
/// `G` itself.
///
/// The group is given by its multiplication table with the identity at
/// index `0`; the table is checked for associativity and invertibility.
pub fn pointed_group_fiber(table: &[Vec<usize>]) -> Result<FiberData> {
    let n = table.len();
    if n == 0 {
        return Err(Error::Precondition("empty multiplication table".into()));
    }
    let ok_shape = table.iter().all(|row| row.len() == n)
        && table.iter().flatten().all(|&x| x < n);
    if !ok_shape {
        return Err(Error::Precondition("malformed multiplication table".into()));
    }
    let mul = |g: usize, h: usize| table[g][h];
    for g in 0..n {
        if mul(0, g) != g || mul(g, 0) != g {
            return Err(Error::Precondition("index 0 is not an identity".into()));
        }
        for h in 0..n {
            for k in 0..n {
                if mul(mul(g, h), k) != mul(g, mul(h, k)) {
                    return Err(Error::Precondition("multiplication is not associative".into()));
                }
            }
        }
    }
    let mut inv = vec![None; n];
    for g in 0..n {
        for h in 0..n {
            if mul(g, h) == 0 && mul(h, g) == 0 {
                inv[g] = Some(h);
            }
        }
    }
    let inv: Vec<usize> = inv
        .into_iter()
        .collect::<Option<_>>()
        .ok_or_else(|| Error::Precondition("an element has no inverse".into()))?;

    let mut fd = FiberData::new(FieldSpec::rational());
    fd.hyperobjects.insert(0);
    for g in 0..n {
        fd.objects.insert(g as Obj);
        fd.phi.insert(g as Obj, 0);
        fd.mu.insert(g as Obj, Scalar::one());
        fd.irreducibles.push(Irreducible {
            name: format!("u{g}"),
            grading: (0, 0),
            unit: g == 0,
        });
        fd.conj.push(inv[g]);
    }
    for g in 0..n {
        for h in 0..n {
            fd.fusion.insert((g, h), BTreeMap::from([(mul(g, h), 1)]));
        }
    }
    for g in 0..n {
        for l in 0..n {
            // F_kl(u_g) = δ_{k, g·l} ℂ.
            fd.dims.insert((g, mul(g, l) as Obj, l as Obj), 1);
        }
    }
    for g in 0..n {
        for h in 0..n {
            for m in 0..n {
                let k = mul(mul(g, h), m);
                fd.iota.insert((g, h, k as Obj, m as Obj), Mat::identity(1));
            }
        }
    }
    for g in 0..n {
        for l in 0..n {
            fd.ev.insert((g, l as Obj), Mat::identity(1));
            fd.coev.insert((g, l as Obj), Mat::identity(1));
        }
    }
    Ok(fd)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partial_hopf::{
        groupoid_union, hyperobject_partition, pair_groupoid, verify_antipode,
        verify_canonical_maps, verify_integral, verify_partial_algebra, verify_partial_bialgebra,
        verify_star,
    };
    use crate::report::Status;
    use serde_json::json;

    fn assert_battery(data: &PartialHopfData) {
        for (name, rep) in [
            ("algebra", verify_partial_algebra(data)),
            ("bialgebra", verify_partial_bialgebra(data)),
            ("antipode", verify_antipode(data)),
            ("canonical", verify_canonical_maps(data)),
            ("integral", verify_integral(data)),
            ("star", verify_star(data)),
        ] {
            assert!(
                rep.all_passed(),
                "{name}: {} {:?}",
                rep.summary(),
                rep.failures().collect::<Vec<_>>()
            );
        }
    }

    fn total_dim(data: &PartialHopfData) -> usize {
        data.blocks.values().sum()
    }

    #[test]
    fn generators_validate() {
        for fd in [
            groupoid_fiber(&[vec![1, 2, 3]]),
            groupoid_fiber(&[vec![1, 2], vec![5]]),
            pointed_group_fiber(&cyclic_table(1)).unwrap(),
            pointed_group_fiber(&cyclic_table(2)).unwrap(),
            pointed_group_fiber(&cyclic_table(3)).unwrap(),
        ] {
            let rep = validate_fiber_data(&fd);
            assert!(rep.all_passed(), "{} {:?}", rep.summary(), rep.failures().collect::<Vec<_>>());
        }
    }

    #[test]
    fn flipped_sign_fails_cocycle_with_triple_witness() {
        let mut fd = pointed_group_fiber(&cyclic_table(2)).unwrap();
        let flipped = Mat::identity(1).scale(&Scalar::from_int(-1), &fd.field);
        fd.iota.insert((1, 1, 0, 0), flipped);
        let rep = validate_fiber_data(&fd);
        let cocycle: Vec<_> = rep
            .checks
            .iter()
            .filter(|c| c.axiom == "tannaka/cocycle" && c.status == Status::Fail)
            .collect();
        assert!(!cocycle.is_empty());
        assert!(cocycle[0].witness.as_ref().unwrap().contains("triple"));
        // The flipped tensor is still unitary, so only coherence breaks.
        assert!(rep
            .checks
            .iter()
            .filter(|c| c.axiom == "tannaka/iota-isometry")
            .all(|c| c.status == Status::Pass));
    }

    #[test]
    fn trivial_fibers_reconstruct_groupoid_function_algebras() {
        let out = reconstruct(&pair_groupoid_fiber(&[1, 2, 3]).unwrap()).unwrap();
        assert_eq!(total_dim(&out.data), 9);
        assert_eq!(out.data, pair_groupoid(3));

        // Two points give the function algebra on the pair groupoid of
        // size two, i.e. a commutative algebra of dimension four whose
        // corepresentation theory is that of 2×2 matrix units.
        let out2 = reconstruct(&pair_groupoid_fiber(&[1, 2]).unwrap()).unwrap();
        assert_eq!(out2.data, pair_groupoid(2));

        let classes = vec![vec![1, 2], vec![5]];
        let out3 = reconstruct(&groupoid_fiber(&classes)).unwrap();
        assert_eq!(out3.data, groupoid_union(&classes));
        assert_eq!(hyperobject_partition(&out3.data).unwrap().len(), 2);
        assert_battery(&out3.data);
    }

    #[test]
    fn group_fibers_reconstruct_with_cubic_dimension() {
        let out1 = reconstruct(&pointed_group_fiber(&cyclic_table(1)).unwrap()).unwrap();
        assert_eq!(total_dim(&out1.data), 1);

        let out2 = reconstruct(&pointed_group_fiber(&cyclic_table(2)).unwrap()).unwrap();
        assert_eq!(total_dim(&out2.data), 8);
        assert_battery(&out2.data);

        let out3 = reconstruct(&pointed_group_fiber(&cyclic_table(3)).unwrap()).unwrap();
        assert_eq!(total_dim(&out3.data), 27);
        assert_battery(&out3.data);
    }

    #[test]
    fn roundtrip_matches_input_fusion() {
        for fd in [
            pair_groupoid_fiber(&[1, 2]).unwrap(),
            pointed_group_fiber(&cyclic_table(2)).unwrap(),
            pointed_group_fiber(&cyclic_table(3)).unwrap(),
        ] {
            let rep = roundtrip_check(&fd).unwrap();
            assert!(rep.all_passed(), "{} {:?}", rep.summary(), rep.failures().collect::<Vec<_>>());
        }
    }

    #[test]
    fn canonical_coreps_are_irreducible_and_exhaustive() {
        let fd = pointed_group_fiber(&cyclic_table(3)).unwrap();
        let out = reconstruct(&fd).unwrap();
        let xs: Vec<Corep> = (0..3).map(|a| canonical_corep(&fd, &out, a)).collect();
        for x in &xs {
            assert!(verify_corep(&out.data, x).all_passed());
            assert!(is_irreducible(&out.data, x));
        }
        for (a, x) in xs.iter().enumerate() {
            for (b, y) in xs.iter().enumerate() {
                assert_eq!(morphism_space(&out.data, x, y).is_empty(), a != b);
            }
        }
    }

    #[test]
    fn fiber_json_roundtrips_and_is_stable() {
        for fd in [
            groupoid_fiber(&[vec![1, 2], vec![5]]),
            pointed_group_fiber(&cyclic_table(3)).unwrap(),
        ] {
            let v = fiber_to_json(&fd);
            let back = fiber_from_json(&v).unwrap();
            assert_eq!(fd, back);
            let a = serde_json::to_string(&v).unwrap();
            let b = serde_json::to_string(&fiber_to_json(&back)).unwrap();
            assert_eq!(a, b);
        }
    }

    #[test]
    fn malformed_fiber_json_is_rejected() {
        assert!(fiber_from_json(&json!([])).is_err());
        assert!(fiber_from_json(&json!({"hyperobjects": [0], "objects": {"x": 0}})).is_err());
        let mut v = fiber_to_json(&pointed_group_fiber(&cyclic_table(2)).unwrap());
        v["irreducibles"][1]["conj"] = json!(7);
        assert!(fiber_from_json(&v).is_err());
    }

    #[test]
    fn generator_preconditions() {
        assert!(pair_groupoid_fiber(&[]).is_err());
        assert!(pointed_group_fiber(&[]).is_err());
        // identity not at index 0
        assert!(pointed_group_fiber(&[vec![1, 0], vec![0, 1]]).is_err());
        // not associative / not a Latin square
        assert!(pointed_group_fiber(&[vec![0, 1], vec![1, 1]]).is_err());
        // invalid fiber data is rejected by reconstruction
        let mut fd = pointed_group_fiber(&cyclic_table(2)).unwrap();
        fd.iota.remove(&(1, 1, 0, 0));
        assert!(matches!(reconstruct(&fd), Err(Error::Precondition(_))));
    }
}
