//! Exact decomposition of corepresentations into irreducible summands.
//!
//! Splitting is driven entirely by the endomorphism space: kernels and
//! images of endomorphisms are invariant, so a Fitting decomposition
//! `V = ker(Eˢ) ⊕ im(Eˢ)` along a singular, non-nilpotent endomorphism `E`
//! splits the corepresentation. Candidate endomorphisms are shifted by the
//! rational roots of their minimal polynomials; fields where no splitting
//! eigenvalue is rational are reported as a precondition failure rather
//! than approximated.

use super::{morphism_space, Corep};
use crate::error::{Error, Result};
use crate::grading::{BigradedSpace, BlockMap, Obj};
use crate::linalg::Mat;
use crate::partial_hopf::PartialHopfData;
use crate::scalar::{Rat, Scalar};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use std::collections::BTreeMap;

/// One isotypic component of a decomposition: an irreducible
/// corepresentation together with one embedding into the decomposed
/// corepresentation per occurrence.
#[derive(Debug, Clone)]
pub struct Summand {
    pub corep: Corep,
    pub embeddings: Vec<BlockMap>,
}

impl Summand {
    pub fn multiplicity(&self) -> usize {
        self.embeddings.len()
    }
}

/// A nonzero corepresentation is irreducible when its endomorphism space is
/// one-dimensional.
pub fn is_irreducible(data: &PartialHopfData, x: &Corep) -> bool {
    x.total_dim() > 0 && morphism_space(data, x, x).len() == 1
}

/// Split into irreducible summands, grouped up to equivalence; each group
/// carries its multiplicity as the number of embeddings.
pub fn decompose(data: &PartialHopfData, x: &Corep) -> Result<Vec<Summand>> {
    let mut work: Vec<(Corep, BlockMap)> = vec![(x.clone(), identity_map(&x.carrier))];
    let mut irreducible: Vec<(Corep, BlockMap)> = Vec::new();
    while let Some((y, e)) = work.pop() {
        if y.total_dim() == 0 {
            continue;
        }
        let endos = morphism_space(data, &y, &y);
        if endos.len() <= 1 {
            irreducible.push((y, e));
            continue;
        }
        let (sub_a, sub_b) = split_once(data, &y, &endos)?;
        for sub in [sub_a, sub_b] {
            let (z, iota) = restrict(data, &y, &sub)?;
            let emb = compose(data, &e, &iota);
            work.push((z, emb));
        }
    }

    let mut groups: Vec<Summand> = Vec::new();
    'piece: for (z, e) in irreducible {
        for g in &mut groups {
            let homs = morphism_space(data, &g.corep, &z);
            if let Some(iso) = homs.first() {
                g.embeddings.push(compose(data, &e, iso));
                continue 'piece;
            }
        }
        groups.push(Summand {
            corep: z,
            embeddings: vec![e],
        });
    }
    Ok(groups)
}

/// Identity endomorphism of a carrier, as a block map.
pub fn identity_map(carrier: &BigradedSpace) -> BlockMap {
    let mut bm = BlockMap::new();
    for ((k, l), d) in carrier.blocks() {
        bm.set(k, l, Mat::identity(d));
    }
    bm
}

/// Blockwise composition `a ∘ b`; absent blocks act as zero.
pub fn compose(data: &PartialHopfData, a: &BlockMap, b: &BlockMap) -> BlockMap {
    let mut out = BlockMap::new();
    for (&(k, l), mb) in &b.blocks {
        if let Some(ma) = a.get(k, l) {
            out.set(k, l, ma.mul(mb, &data.field));
        }
    }
    out
}

/// Find an endomorphism-driven proper splitting `V = W ⊕ W'`, returning the
/// two subspaces as per-pair column bases.
fn split_once(
    data: &PartialHopfData,
    y: &Corep,
    endos: &[BlockMap],
) -> Result<(SubspaceBasis, SubspaceBasis)> {
    let mut candidates: Vec<BlockMap> = endos.to_vec();
    for a in endos {
        for b in endos {
            candidates.push(compose(data, a, b));
        }
    }
    for e in &candidates {
        let Some(shifts) = rational_spectrum(data, &y.carrier, e) else {
            continue;
        };
        for c in shifts {
            let shifted = shift_endo(data, &y.carrier, e, &c);
            if let Some(split) = fitting_split(data, &y.carrier, &shifted) {
                return Ok(split);
            }
        }
    }
    Err(Error::Precondition(
        "no splitting endomorphism with rational spectrum".into(),
    ))
}

type SubspaceBasis = BTreeMap<(Obj, Obj), Mat>;

/// `e - c·id` blockwise.
fn shift_endo(
    data: &PartialHopfData,
    carrier: &BigradedSpace,
    e: &BlockMap,
    c: &Rat,
) -> BlockMap {
    let mut out = BlockMap::new();
    let shift = Scalar::from_rat(c.clone()).neg();
    for ((k, l), d) in carrier.blocks() {
        let base = match e.get(k, l) {
            Some(m) => m.clone(),
            None => Mat::zeros(d, d),
        };
        out.set(
            k,
            l,
            base.add(&Mat::identity(d).scale(&shift, &data.field)),
        );
    }
    out
}

/// Fitting decomposition along `f`: `(ker(fˢ), im(fˢ))` per block, provided
/// both parts are nonzero overall.
fn fitting_split(
    data: &PartialHopfData,
    carrier: &BigradedSpace,
    f: &BlockMap,
) -> Option<(SubspaceBasis, SubspaceBasis)> {
    let mut kernel = SubspaceBasis::new();
    let mut image = SubspaceBasis::new();
    let mut kdim = 0usize;
    let mut idim = 0usize;
    for ((k, l), d) in carrier.blocks() {
        let base = match f.get(k, l) {
            Some(m) => m.clone(),
            None => Mat::zeros(d, d),
        };
        let mut power = Mat::identity(d);
        for _ in 0..d {
            power = power.mul(&base, &data.field);
        }
        let null = power.nullspace(&data.field);
        let kmat = Mat::from_fn(d, null.len(), |i, j| null[j][i].clone());
        kdim += null.len();
        let (_, pivots) = power.rref(&data.field);
        let imat = Mat::from_fn(d, pivots.len(), |i, j| power.get(i, pivots[j]).clone());
        idim += pivots.len();
        kernel.insert((k, l), kmat);
        image.insert((k, l), imat);
    }
    if kdim == 0 || idim == 0 {
        return None;
    }
    Some((kernel, image))
}

/// Restrict a corepresentation to an invariant subspace given by per-pair
/// column bases; returns the restriction together with its inclusion map.
fn restrict(
    data: &PartialHopfData,
    y: &Corep,
    sub: &SubspaceBasis,
) -> Result<(Corep, BlockMap)> {
    let mut carrier = BigradedSpace::new(y.carrier.objects.iter().copied());
    for (&(k, l), iota) in sub {
        carrier.set_dim(k, l, iota.cols());
    }
    let mut z = Corep::new(carrier.clone());
    for (sq, mats) in &y.blocks {
        let rows = carrier.dim(sq.k, sq.l);
        let cols = carrier.dim(sq.m, sq.n);
        if rows == 0 && cols == 0 {
            continue;
        }
        let iota_top = sub
            .get(&(sq.k, sq.l))
            .cloned()
            .unwrap_or_else(|| Mat::zeros(y.carrier.dim(sq.k, sq.l), 0));
        let iota_bot = sub
            .get(&(sq.m, sq.n))
            .cloned()
            .unwrap_or_else(|| Mat::zeros(y.carrier.dim(sq.m, sq.n), 0));
        let mut out = Vec::with_capacity(mats.len());
        for m in mats {
            let rhs = m.mul(&iota_bot, &data.field);
            let mut n = Mat::zeros(rows, cols);
            for j in 0..cols {
                let col: Vec<Scalar> = (0..rhs.rows()).map(|i| rhs.get(i, j).clone()).collect();
                let sol = iota_top.solve(&col, &data.field).ok_or_else(|| {
                    Error::Precondition(format!("subspace is not invariant at {sq}"))
                })?;
                for (i, c) in sol.into_iter().enumerate() {
                    n.set(i, j, c);
                }
            }
            out.push(n);
        }
        z.set_block(data, *sq, out);
    }
    let mut inc = BlockMap::new();
    for (&(k, l), iota) in sub {
        inc.set(k, l, iota.clone());
    }
    Ok((z, inc))
}

/// The rational roots of the minimal polynomial of an endomorphism, when
/// every coefficient is rational; `None` otherwise.
fn rational_spectrum(
    data: &PartialHopfData,
    carrier: &BigradedSpace,
    e: &BlockMap,
) -> Option<Vec<Rat>> {
    let layout: Vec<((Obj, Obj), usize)> = carrier.blocks().collect();
    let total: usize = layout.iter().map(|&(_, d)| d * d).sum();
    if total == 0 {
        return Some(Vec::new());
    }
    let vectorize = |bm: &BlockMap| -> Vec<Scalar> {
        let mut v = Vec::with_capacity(total);
        for &((k, l), d) in &layout {
            match bm.get(k, l) {
                Some(m) => {
                    for i in 0..d {
                        for j in 0..d {
                            v.push(m.get(i, j).clone());
                        }
                    }
                }
                None => v.extend(std::iter::repeat_with(Scalar::zero).take(d * d)),
            }
        }
        v
    };
    let mut powers: Vec<Vec<Scalar>> = vec![vectorize(&identity_map(carrier))];
    let mut cur = identity_map(carrier);
    loop {
        cur = compose(data, &cur, e);
        // pad absent blocks so vectorization stays aligned
        let v = vectorize(&cur);
        let system = Mat::from_fn(total, powers.len(), |i, j| powers[j][i].clone());
        if let Some(sol) = system.solve(&v, &data.field) {
            // minimal polynomial t^k - Σ c_i t^i
            let mut coeffs: Vec<Rat> = Vec::with_capacity(sol.len() + 1);
            for c in &sol {
                coeffs.push(c.neg().as_rat()?);
            }
            coeffs.push(Rat::one());
            return Some(rational_roots(&coeffs));
        }
        powers.push(v);
        if powers.len() > total + 1 {
            return None;
        }
    }
}

/// All rational roots of a polynomial with rational coefficients
/// (`coeffs[i]` multiplies `tⁱ`, leading coefficient nonzero).
fn rational_roots(coeffs: &[Rat]) -> Vec<Rat> {
    let eval = |c: &Rat| -> bool {
        let mut acc = Rat::zero();
        for a in coeffs.iter().rev() {
            acc = acc * c + a;
        }
        acc.is_zero()
    };
    // clear denominators to integer coefficients
    let mut lcm = BigInt::one();
    for c in coeffs {
        lcm = num::integer::lcm(lcm, c.denom().clone());
    }
    let scale = Rat::from_integer(lcm);
    let ints: Vec<BigInt> = coeffs.iter().map(|c| (c * &scale).to_integer()).collect();
    let lead = ints.last().unwrap().clone();
    let mut low = 0usize;
    while low < ints.len() && ints[low].is_zero() {
        low += 1;
    }
    let mut roots = Vec::new();
    if low > 0 {
        roots.push(Rat::zero());
    }
    if low >= ints.len() {
        return roots;
    }
    let tail = ints[low].abs();
    for p in divisors(&tail) {
        for q in divisors(&lead.abs()) {
            for num in [p.clone(), -&p] {
                let c = Rat::new(num, q.clone());
                if eval(&c) && !roots.contains(&c) {
                    roots.push(c);
                }
            }
        }
    }
    roots.sort();
    roots
}

fn divisors(n: &BigInt) -> Vec<BigInt> {
    let mut out = Vec::new();
    if n.is_zero() {
        return out;
    }
    let mut d = BigInt::one();
    while &d * &d <= *n {
        if (n % &d).is_zero() {
            out.push(d.clone());
            let other = n / &d;
            if other != d {
                out.push(other);
            }
        }
        d += BigInt::one();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corep::{morphism_space, regular_corep_from_element, trivial_corep, verify_corep};
    use crate::grading::Square;
    use crate::partial_hopf::{groupoid_algebra, groupoid_union, pair_groupoid};

    #[test]
    fn irreducibility_of_the_trivial_corep_tracks_connectedness() {
        let one_class = pair_groupoid(3);
        assert!(is_irreducible(&one_class, &trivial_corep(&one_class)));
        let two_classes = groupoid_union(&[vec![1, 2], vec![3]]);
        assert!(!is_irreducible(&two_classes, &trivial_corep(&two_classes)));
    }

    #[test]
    fn irreducible_input_is_returned_unchanged() {
        let data = pair_groupoid(2);
        let u = trivial_corep(&data);
        let parts = decompose(&data, &u).unwrap();
        assert_eq!(parts.len(), 1);
        assert_eq!(parts[0].multiplicity(), 1);
        assert_eq!(parts[0].corep, u);
        // the sole embedding is the identity
        for ((k, l), d) in u.carrier.blocks() {
            assert_eq!(parts[0].embeddings[0].get(k, l), Some(&Mat::identity(d)));
        }
    }

    #[test]
    fn trivial_corep_splits_along_hyperobject_classes() {
        let data = groupoid_union(&[vec![1, 2], vec![3, 4]]);
        let u = trivial_corep(&data);
        let parts = decompose(&data, &u).unwrap();
        assert_eq!(parts.len(), 2);
        for p in &parts {
            assert_eq!(p.multiplicity(), 1);
            assert_eq!(p.corep.total_dim(), 2);
            assert!(is_irreducible(&data, &p.corep));
            assert!(verify_corep(&data, &p.corep).no_failures());
        }
        // the two pieces are supported on different classes
        let support = |c: &Corep| -> Vec<(Obj, Obj)> { c.carrier.blocks().map(|(kl, _)| kl).collect() };
        assert_ne!(support(&parts[0].corep), support(&parts[1].corep));
    }

    #[test]
    fn direct_sum_of_two_copies_has_multiplicity_two() {
        let data = pair_groupoid(2);
        let u = trivial_corep(&data);
        // build U ⊕ U by doubling the carrier and coefficients blockwise
        let mut carrier = BigradedSpace::new(data.objects.iter().copied());
        for ((k, l), d) in u.carrier.blocks() {
            carrier.set_dim(k, l, 2 * d);
        }
        let mut x = Corep::new(carrier);
        for (sq, mats) in &u.blocks {
            let doubled: Vec<Mat> = mats
                .iter()
                .map(|m| {
                    Mat::from_fn(2 * m.rows(), 2 * m.cols(), |i, j| {
                        let (bi, ii) = (i / m.rows(), i % m.rows());
                        let (bj, jj) = (j / m.cols(), j % m.cols());
                        if bi == bj {
                            m.get(ii, jj).clone()
                        } else {
                            Scalar::zero()
                        }
                    })
                })
                .collect();
            x.set_block(&data, *sq, doubled);
        }
        assert!(verify_corep(&data, &x).no_failures());
        let parts = decompose(&data, &x).unwrap();
        assert_eq!(parts.len(), 1);
        assert_eq!(parts[0].multiplicity(), 2);
        assert!(is_irreducible(&data, &parts[0].corep));
        // each embedding really is a morphism into the sum
        for e in &parts[0].embeddings {
            assert!(
                crate::corep::morphism_defect(&data, &parts[0].corep, &x, e).is_none()
            );
        }
    }

    #[test]
    fn matrix_unit_coreps_are_pairwise_inequivalent() {
        let data = groupoid_algebra(&[vec![1, 2]]);
        let x = regular_corep_from_element(
            &data,
            &data.basis_elem(Square::new(1, 2, 1, 2), 0),
        )
        .unwrap();
        let y = regular_corep_from_element(
            &data,
            &data.basis_elem(Square::new(1, 1, 1, 1), 0),
        )
        .unwrap();
        assert!(is_irreducible(&data, &x));
        assert!(is_irreducible(&data, &y));
        assert!(morphism_space(&data, &x, &y).is_empty());
        let parts = decompose(&data, &x).unwrap();
        assert_eq!(parts.len(), 1);
        assert_eq!(parts[0].multiplicity(), 1);
    }

    #[test]
    fn rational_root_extraction() {
        use crate::scalar::rat;
        // (t - 2)(t + 1/3) = t² - 5/3 t - 2/3
        let coeffs = vec![rat(-2, 3), rat(-5, 3), rat(1, 1)];
        let roots = rational_roots(&coeffs);
        assert_eq!(roots, vec![rat(-1, 3), rat(2, 1)]);
        // t² + 1 has no rational roots
        assert!(rational_roots(&[rat(1, 1), rat(0, 1), rat(1, 1)]).is_empty());
        // t·(t - 3)
        let roots = rational_roots(&[rat(0, 1), rat(-3, 1), rat(1, 1)]);
        assert_eq!(roots, vec![rat(0, 1), rat(3, 1)]);
    }
}
