//! Partial (Hopf) *-algebra data and the axiom verifier battery.
//!
//! A datum is a finitely supported family of graded blocks `A(k l; m n)`
//! together with structure constants for the product, the coproduct
//! components `Δ_rs`, the counit, the units `1(k|m)`, and optionally an
//! antipode, a star structure and an invariant integral. Nothing is assumed
//! correct on construction: every defining identity is checked by a verifier
//! in [`verify`], and failures are reported with localized witnesses rather
//! than panics.
//!
//! Truncated data (a finite window of an infinite object) declares boundary
//! objects and truncated blocks; verifier instances touching them are
//! reported as skipped, never silently passed or failed.

mod fixtures;
mod json;
mod verify;

pub use fixtures::{groupoid_algebra, groupoid_union, pair_groupoid, product};
pub(crate) use json::{field_from_json, field_to_json};
pub use json::{data_from_json, data_to_json};
pub(crate) use verify::Scan;
pub use verify::{
    hyperobject_partition, verify_antipode, verify_canonical_maps, verify_integral,
    verify_linking_structures, verify_partial_algebra, verify_partial_bialgebra, verify_star,
    LinkingMode,
};

use crate::grading::{Obj, Square};
use crate::linalg::Mat;
use crate::scalar::{FieldSpec, Scalar};
use std::collections::{BTreeMap, BTreeSet};

/// A finitely supported partial (Hopf) *-algebra given by structure
/// constants over a chosen basis of each block.
///
/// Conventions:
/// * the product maps `A(k l; m n) × A(l p; n q) → A(k p; m q)`
///   (horizontal composition of squares);
/// * the coproduct component at rows `(r, s)` maps
///   `A(k l; m n) → A(k l; r s) ⊗ A(r s; m n)`;
/// * the counit lives on blocks `A(k l; k l)`, the integral on blocks
///   `A(k k; m m)`;
/// * the antipode maps `A(K) → A(K^∘•)`, the star map `A(K) → A(K^*)` with
///   `K^* = (l k; n m)`.
#[derive(Debug, Clone, PartialEq)]
pub struct PartialHopfData {
    pub field: FieldSpec,
    pub objects: BTreeSet<Obj>,
    /// Objects near the edge of a truncation window: their blocks may carry
    /// incomplete structure constants, so checks touching them are skipped.
    /// The constructor of truncated data must declare a margin wide enough
    /// that interior identities never reach outside the window.
    pub boundary: BTreeSet<Obj>,
    /// Blocks known to be nonzero in the untruncated object but not carried
    /// here (e.g. beyond a degree cutoff); checks needing them are skipped.
    pub truncated_blocks: BTreeSet<Square>,
    /// Dimensions of the nonzero blocks.
    pub blocks: BTreeMap<Square, usize>,
    /// `product[(K, L)][i][j]` = coefficients of `e_i^K · e_j^L` over the
    /// basis of `K·L`. Missing entries on composable squares mean zero.
    pub product: BTreeMap<(Square, Square), Vec<Vec<Vec<Scalar>>>>,
    /// `coproduct[(K, (r, s))][i]` = the matrix of `Δ_rs(e_i^K)` with rows
    /// indexed by the basis of `A(k l; r s)` and columns by `A(r s; m n)`.
    pub coproduct: BTreeMap<(Square, (Obj, Obj)), Vec<Mat>>,
    /// Counit coefficients on blocks with equal top and bottom rows.
    pub counit: BTreeMap<Square, Vec<Scalar>>,
    /// Coefficients of `1(k|m)` over the basis of `A(k k; m m)`.
    pub units: BTreeMap<(Obj, Obj), Vec<Scalar>>,
    /// Antipode matrices `A(K) → A(K^∘•)` (target basis × source basis).
    pub antipode: Option<BTreeMap<Square, Mat>>,
    /// Star matrices applied after coefficient conjugation,
    /// `A(k l; m n) → A(l k; n m)`.
    pub star: Option<BTreeMap<Square, Mat>>,
    /// Integral coefficients `φ` on the basis of `A(k k; m m)`.
    pub integral: Option<BTreeMap<(Obj, Obj), Vec<Scalar>>>,
}

impl PartialHopfData {
    pub fn new(field: FieldSpec, objects: impl IntoIterator<Item = Obj>) -> Self {
        PartialHopfData {
            field,
            objects: objects.into_iter().collect(),
            boundary: BTreeSet::new(),
            truncated_blocks: BTreeSet::new(),
            blocks: BTreeMap::new(),
            product: BTreeMap::new(),
            coproduct: BTreeMap::new(),
            counit: BTreeMap::new(),
            units: BTreeMap::new(),
            antipode: None,
            star: None,
            integral: None,
        }
    }

    pub fn add_block(&mut self, sq: Square, dim: usize) {
        for o in [sq.k, sq.l, sq.m, sq.n] {
            assert!(self.objects.contains(&o), "block object {o} not declared");
        }
        if dim > 0 {
            self.blocks.insert(sq, dim);
        }
    }

    pub fn dim(&self, sq: &Square) -> usize {
        self.blocks.get(sq).copied().unwrap_or(0)
    }

    pub fn squares(&self) -> impl Iterator<Item = Square> + '_ {
        self.blocks.keys().copied()
    }

    /// All ordered pairs of declared objects.
    pub fn object_pairs(&self) -> Vec<(Obj, Obj)> {
        let mut out = Vec::new();
        for &r in &self.objects {
            for &s in &self.objects {
                out.push((r, s));
            }
        }
        out
    }

    pub fn set_product(&mut self, k: Square, l: Square, table: Vec<Vec<Vec<Scalar>>>) {
        let kl = k.hcomp(&l).expect("product on non-composable squares");
        assert_eq!(table.len(), self.dim(&k));
        for row in &table {
            assert_eq!(row.len(), self.dim(&l));
            for v in row {
                assert_eq!(v.len(), self.dim(&kl));
            }
        }
        self.product.insert((k, l), table);
    }

    pub fn set_coproduct(&mut self, k: Square, rs: (Obj, Obj), mats: Vec<Mat>) {
        let up = Square::new(k.k, k.l, rs.0, rs.1);
        let down = Square::new(rs.0, rs.1, k.m, k.n);
        assert_eq!(mats.len(), self.dim(&k));
        for m in &mats {
            assert_eq!((m.rows(), m.cols()), (self.dim(&up), self.dim(&down)));
        }
        if mats.iter().all(Mat::is_zero) {
            self.coproduct.remove(&(k, rs));
        } else {
            self.coproduct.insert((k, rs), mats);
        }
    }

    pub fn set_counit(&mut self, k: Square, coeffs: Vec<Scalar>) {
        assert_eq!(k.top(), k.bottom(), "counit outside a diagonal block");
        assert_eq!(coeffs.len(), self.dim(&k));
        self.counit.insert(k, coeffs);
    }

    pub fn set_unit(&mut self, k: Obj, m: Obj, coeffs: Vec<Scalar>) {
        assert_eq!(coeffs.len(), self.dim(&Square::unit(k, m)));
        if coeffs.iter().all(Scalar::is_zero) {
            self.units.remove(&(k, m));
        } else {
            self.units.insert((k, m), coeffs);
        }
    }

    pub fn set_antipode(&mut self, k: Square, mat: Mat) {
        let target = k.circ_bullet();
        assert_eq!((mat.rows(), mat.cols()), (self.dim(&target), self.dim(&k)));
        self.antipode.get_or_insert_with(BTreeMap::new).insert(k, mat);
    }

    pub fn set_star(&mut self, k: Square, mat: Mat) {
        let target = k.star_grade();
        assert_eq!((mat.rows(), mat.cols()), (self.dim(&target), self.dim(&k)));
        self.star.get_or_insert_with(BTreeMap::new).insert(k, mat);
    }

    pub fn set_integral(&mut self, k: Obj, m: Obj, coeffs: Vec<Scalar>) {
        assert_eq!(coeffs.len(), self.dim(&Square::unit(k, m)));
        self.integral
            .get_or_insert_with(BTreeMap::new)
            .insert((k, m), coeffs);
    }

    /// `true` when a block is affected by the truncation window.
    pub fn out_of_window(&self, sq: &Square) -> bool {
        self.truncated_blocks.contains(sq)
            || [sq.k, sq.l, sq.m, sq.n]
                .iter()
                .any(|o| self.boundary.contains(o))
    }

    // ----- element construction -----

    pub fn basis_elem(&self, sq: Square, i: usize) -> TotalElement {
        let d = self.dim(&sq);
        assert!(i < d, "basis index out of range");
        let mut v = vec![Scalar::zero(); d];
        v[i] = Scalar::one();
        TotalElement::single(sq, v)
    }

    /// The unit `1(k|m)` as an element (zero if not declared).
    pub fn unit_elem(&self, k: Obj, m: Obj) -> TotalElement {
        match self.units.get(&(k, m)) {
            Some(v) => TotalElement::single(Square::unit(k, m), v.clone()),
            None => TotalElement::zero(),
        }
    }

    // ----- structure maps on elements -----

    /// Product of two basis elements; zero on non-composable grades and on
    /// composable pairs without a stored table.
    pub fn mul_basis(&self, k: Square, i: usize, l: Square, j: usize) -> TotalElement {
        let Some(kl) = k.hcomp(&l) else {
            return TotalElement::zero();
        };
        let Some(table) = self.product.get(&(k, l)) else {
            return TotalElement::zero();
        };
        TotalElement::single(kl, table[i][j].clone())
    }

    pub fn mul(&self, a: &TotalElement, b: &TotalElement) -> TotalElement {
        let mut out = TotalElement::zero();
        for (ka, va) in &a.comps {
            for (kb, vb) in &b.comps {
                for (i, ca) in va.iter().enumerate() {
                    if ca.is_zero() {
                        continue;
                    }
                    for (j, cb) in vb.iter().enumerate() {
                        if cb.is_zero() {
                            continue;
                        }
                        let p = self.mul_basis(*ka, i, *kb, j);
                        let c = ca.mul(cb, &self.field);
                        out = out.add(&p.scale(&c, &self.field));
                    }
                }
            }
        }
        out
    }

    /// The total counit: zero off blocks with equal top and bottom rows.
    pub fn counit_value(&self, a: &TotalElement) -> Scalar {
        let mut out = Scalar::zero();
        for (k, v) in &a.comps {
            if let Some(eps) = self.counit.get(k) {
                for (c, e) in v.iter().zip(eps) {
                    out = out.add(&c.mul(e, &self.field));
                }
            }
        }
        out
    }

    /// The total integral: zero off blocks `A(k k; m m)`.
    pub fn integral_value(&self, a: &TotalElement) -> Scalar {
        let Some(phi) = &self.integral else {
            return Scalar::zero();
        };
        let mut out = Scalar::zero();
        for (k, v) in &a.comps {
            if k.k == k.l && k.m == k.n {
                if let Some(coeffs) = phi.get(&(k.k, k.m)) {
                    for (c, p) in v.iter().zip(coeffs) {
                        out = out.add(&c.mul(p, &self.field));
                    }
                }
            }
        }
        out
    }

    /// `Δ_rs` of one basis element, as a two-leg tensor.
    pub fn delta_rs_basis(&self, k: Square, i: usize, rs: (Obj, Obj)) -> TensorElement {
        let mut out = TensorElement::zero();
        if let Some(mats) = self.coproduct.get(&(k, rs)) {
            let up = Square::new(k.k, k.l, rs.0, rs.1);
            let down = Square::new(rs.0, rs.1, k.m, k.n);
            out.add_mat(up, down, mats[i].clone());
        }
        out
    }

    /// `Δ_rs` extended linearly to a total element.
    pub fn delta_rs(&self, a: &TotalElement, rs: (Obj, Obj)) -> TensorElement {
        let mut out = TensorElement::zero();
        for (k, v) in &a.comps {
            if let Some(mats) = self.coproduct.get(&(*k, rs)) {
                let up = Square::new(k.k, k.l, rs.0, rs.1);
                let down = Square::new(rs.0, rs.1, k.m, k.n);
                let mut acc = Mat::zeros(self.dim(&up), self.dim(&down));
                for (c, m) in v.iter().zip(mats) {
                    if !c.is_zero() {
                        acc = acc.add(&m.scale(c, &self.field));
                    }
                }
                out.add_mat(up, down, acc);
            }
        }
        out
    }

    /// The total coproduct `Δ(a) = Σ_{r,s} Δ_rs(a)`.
    pub fn delta(&self, a: &TotalElement) -> TensorElement {
        let mut out = TensorElement::zero();
        for (k, v) in &a.comps {
            for ((kk, rs), mats) in self.coproduct.range((*k, (Obj::MIN, Obj::MIN))..) {
                if kk != k {
                    break;
                }
                let up = Square::new(k.k, k.l, rs.0, rs.1);
                let down = Square::new(rs.0, rs.1, k.m, k.n);
                let mut acc = Mat::zeros(self.dim(&up), self.dim(&down));
                for (c, m) in v.iter().zip(mats) {
                    if !c.is_zero() {
                        acc = acc.add(&m.scale(c, &self.field));
                    }
                }
                out.add_mat(up, down, acc);
            }
        }
        out
    }

    /// Apply the antipode; blocks without a stored matrix map to zero.
    pub fn antipode_apply(&self, a: &TotalElement) -> TotalElement {
        let Some(s) = &self.antipode else {
            return TotalElement::zero();
        };
        let mut out = TotalElement::zero();
        for (k, v) in &a.comps {
            if let Some(mat) = s.get(k) {
                let target = k.circ_bullet();
                let mut w = vec![Scalar::zero(); self.dim(&target)];
                for (j, c) in v.iter().enumerate() {
                    if c.is_zero() {
                        continue;
                    }
                    for (i, wi) in w.iter_mut().enumerate() {
                        *wi = wi.add(&mat.get(i, j).mul(c, &self.field));
                    }
                }
                out = out.add(&TotalElement::single(target, w));
            }
        }
        out
    }

    /// Apply the star structure (conjugate coefficients, then the matrices).
    pub fn star_apply(&self, a: &TotalElement) -> TotalElement {
        let Some(st) = &self.star else {
            return TotalElement::zero();
        };
        let mut out = TotalElement::zero();
        for (k, v) in &a.comps {
            if let Some(mat) = st.get(k) {
                let target = k.star_grade();
                let mut w = vec![Scalar::zero(); self.dim(&target)];
                for (j, c) in v.iter().enumerate() {
                    if c.is_zero() {
                        continue;
                    }
                    let cs = c.star();
                    for (i, wi) in w.iter_mut().enumerate() {
                        *wi = wi.add(&mat.get(i, j).mul(&cs, &self.field));
                    }
                }
                out = out.add(&TotalElement::single(target, w));
            }
        }
        out
    }

    /// Left multiplier action `λ_p · a` (projects onto blocks with `k = p`).
    pub fn lambda_left(&self, p: Obj, a: &TotalElement) -> TotalElement {
        a.filter(|k| k.k == p)
    }

    /// Right multiplier action `a · ρ_p` (projects onto blocks with `n = p`).
    pub fn rho_right(&self, p: Obj, a: &TotalElement) -> TotalElement {
        a.filter(|k| k.n == p)
    }

    /// The multiplier `λ_k` expanded over units: `Σ_r 1(k|r)`.
    pub fn lambda_elem(&self, k: Obj) -> TotalElement {
        let mut out = TotalElement::zero();
        for &r in &self.objects {
            out = out.add(&self.unit_elem(k, r));
        }
        out
    }

    /// The multiplier `ρ_n` expanded over units: `Σ_s 1(s|n)`.
    pub fn rho_elem(&self, n: Obj) -> TotalElement {
        let mut out = TotalElement::zero();
        for &s in &self.objects {
            out = out.add(&self.unit_elem(s, n));
        }
        out
    }
}

/// A finite formal sum of homogeneous components, one coefficient vector per
/// block. Zero components are never stored, so equality is literal.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct TotalElement {
    pub comps: BTreeMap<Square, Vec<Scalar>>,
}

impl TotalElement {
    pub fn zero() -> Self {
        TotalElement::default()
    }

    pub fn single(sq: Square, coeffs: Vec<Scalar>) -> Self {
        let mut t = TotalElement::zero();
        if !coeffs.iter().all(Scalar::is_zero) {
            t.comps.insert(sq, coeffs);
        }
        t
    }

    pub fn is_zero(&self) -> bool {
        self.comps.is_empty()
    }

    pub fn add(&self, other: &TotalElement) -> TotalElement {
        let mut comps = self.comps.clone();
        for (k, v) in &other.comps {
            match comps.get_mut(k) {
                Some(w) => {
                    for (wi, vi) in w.iter_mut().zip(v) {
                        *wi = wi.add(vi);
                    }
                }
                None => {
                    comps.insert(*k, v.clone());
                }
            }
        }
        comps.retain(|_, v| !v.iter().all(Scalar::is_zero));
        TotalElement { comps }
    }

    pub fn sub(&self, other: &TotalElement) -> TotalElement {
        let mut neg = other.clone();
        for v in neg.comps.values_mut() {
            for x in v.iter_mut() {
                *x = x.neg();
            }
        }
        self.add(&neg)
    }

    pub fn scale(&self, c: &Scalar, field: &FieldSpec) -> TotalElement {
        if c.is_zero() {
            return TotalElement::zero();
        }
        let mut comps = BTreeMap::new();
        for (k, v) in &self.comps {
            let w: Vec<Scalar> = v.iter().map(|x| x.mul(c, field)).collect();
            if !w.iter().all(Scalar::is_zero) {
                comps.insert(*k, w);
            }
        }
        TotalElement { comps }
    }

    /// Keep only components whose grade satisfies the predicate.
    pub fn filter(&self, pred: impl Fn(&Square) -> bool) -> TotalElement {
        TotalElement {
            comps: self
                .comps
                .iter()
                .filter(|(k, _)| pred(k))
                .map(|(k, v)| (*k, v.clone()))
                .collect(),
        }
    }
}

/// An element of `A ⊗ A`: one coefficient matrix per pair of blocks
/// (rows = left-leg basis, columns = right-leg basis).
#[derive(Debug, Clone, PartialEq, Default)]
pub struct TensorElement {
    pub comps: BTreeMap<(Square, Square), Mat>,
}

impl TensorElement {
    pub fn zero() -> Self {
        TensorElement::default()
    }

    pub fn is_zero(&self) -> bool {
        self.comps.is_empty()
    }

    pub fn add_mat(&mut self, left: Square, right: Square, m: Mat) {
        if m.is_zero() {
            return;
        }
        match self.comps.get_mut(&(left, right)) {
            Some(acc) => {
                let sum = acc.add(&m);
                if sum.is_zero() {
                    self.comps.remove(&(left, right));
                } else {
                    *acc = sum;
                }
            }
            None => {
                self.comps.insert((left, right), m);
            }
        }
    }

    pub fn pure(data: &PartialHopfData, a: &TotalElement, b: &TotalElement) -> Self {
        let mut out = TensorElement::zero();
        for (ka, va) in &a.comps {
            for (kb, vb) in &b.comps {
                let m = Mat::from_fn(va.len(), vb.len(), |i, j| {
                    va[i].mul(&vb[j], &data.field)
                });
                out.add_mat(*ka, *kb, m);
            }
        }
        out
    }

    pub fn add(&self, other: &TensorElement) -> TensorElement {
        let mut out = self.clone();
        for ((l, r), m) in &other.comps {
            out.add_mat(*l, *r, m.clone());
        }
        out
    }

    pub fn sub(&self, other: &TensorElement) -> TensorElement {
        let mut out = self.clone();
        for ((l, r), m) in &other.comps {
            out.add_mat(*l, *r, m.neg());
        }
        out
    }

    /// Componentwise product `(a⊗b)(c⊗d) = ac ⊗ bd`.
    pub fn mul(&self, other: &TensorElement, data: &PartialHopfData) -> TensorElement {
        let mut out = TensorElement::zero();
        for ((ka, kb), m1) in &self.comps {
            for ((la, lb), m2) in &other.comps {
                if ka.hcomp(la).is_none() || kb.hcomp(lb).is_none() {
                    continue;
                }
                for i in 0..m1.rows() {
                    for j in 0..m1.cols() {
                        let c1 = m1.get(i, j);
                        if c1.is_zero() {
                            continue;
                        }
                        for p in 0..m2.rows() {
                            for q in 0..m2.cols() {
                                let c2 = m2.get(p, q);
                                if c2.is_zero() {
                                    continue;
                                }
                                let left = data.mul_basis(*ka, i, *la, p);
                                if left.is_zero() {
                                    continue;
                                }
                                let right = data.mul_basis(*kb, j, *lb, q);
                                if right.is_zero() {
                                    continue;
                                }
                                let c = c1.mul(c2, &data.field);
                                let piece = TensorElement::pure(
                                    data,
                                    &left.scale(&c, &data.field),
                                    &right,
                                );
                                out = out.add(&piece);
                            }
                        }
                    }
                }
            }
        }
        out
    }

    /// Swap the two legs.
    pub fn swap(&self) -> TensorElement {
        let mut out = TensorElement::zero();
        for ((l, r), m) in &self.comps {
            out.add_mat(*r, *l, m.transpose());
        }
        out
    }

    /// Replace each left-leg basis element through `f`, extending linearly.
    pub fn map_left(
        &self,
        data: &PartialHopfData,
        f: impl Fn(Square, usize) -> TotalElement,
    ) -> TensorElement {
        let mut out = TensorElement::zero();
        for ((l, r), m) in &self.comps {
            for i in 0..m.rows() {
                let fe = f(*l, i);
                if fe.is_zero() {
                    continue;
                }
                for (q, v) in &fe.comps {
                    let block = Mat::from_fn(v.len(), m.cols(), |x, j| {
                        v[x].mul(m.get(i, j), &data.field)
                    });
                    out.add_mat(*q, *r, block);
                }
            }
        }
        out
    }

    /// Replace each right-leg basis element through `f`, extending linearly.
    pub fn map_right(
        &self,
        data: &PartialHopfData,
        f: impl Fn(Square, usize) -> TotalElement,
    ) -> TensorElement {
        let mut out = TensorElement::zero();
        for ((l, r), m) in &self.comps {
            for j in 0..m.cols() {
                let fe = f(*r, j);
                if fe.is_zero() {
                    continue;
                }
                for (q, v) in &fe.comps {
                    let block = Mat::from_fn(m.rows(), v.len(), |i, y| {
                        m.get(i, j).mul(&v[y], &data.field)
                    });
                    out.add_mat(*l, *q, block);
                }
            }
        }
        out
    }

    /// Apply a linear operator given by its values on basis pure tensors.
    pub fn apply(
        &self,
        data: &PartialHopfData,
        f: impl Fn(Square, usize, Square, usize) -> TensorElement,
    ) -> TensorElement {
        let mut out = TensorElement::zero();
        for ((l, r), m) in &self.comps {
            for i in 0..m.rows() {
                for j in 0..m.cols() {
                    let c = m.get(i, j);
                    if c.is_zero() {
                        continue;
                    }
                    let im = f(*l, i, *r, j);
                    for ((ql, qr), mm) in &im.comps {
                        out.add_mat(*ql, *qr, mm.scale(c, &data.field));
                    }
                }
            }
        }
        out
    }

    /// Keep only components whose pair of grades satisfies the predicate.
    pub fn filter(&self, pred: impl Fn(&Square, &Square) -> bool) -> TensorElement {
        TensorElement {
            comps: self
                .comps
                .iter()
                .filter(|((l, r), _)| pred(l, r))
                .map(|(k, m)| (*k, m.clone()))
                .collect(),
        }
    }

    /// Leg-wise star (no swap of legs).
    pub fn star_legs(&self, data: &PartialHopfData) -> TensorElement {
        let mut out = TensorElement::zero();
        for ((l, r), m) in &self.comps {
            for i in 0..m.rows() {
                for j in 0..m.cols() {
                    let c = m.get(i, j);
                    if c.is_zero() {
                        continue;
                    }
                    let ls = data.star_apply(&data.basis_elem(*l, i));
                    let rs = data.star_apply(&data.basis_elem(*r, j));
                    let piece = TensorElement::pure(data, &ls.scale(&c.star(), &data.field), &rs);
                    out = out.add(&piece);
                }
            }
        }
        out
    }
}

/// A finitely supported coefficient family over the object set, standing for
/// a diagonal multiplier `Σ_p c_p λ_p` (or `ρ_p`, or `Σ_p c_p ρ_p ⊗ λ_p`).
/// Products of such multipliers are pointwise products of coefficients.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct MultiplierFamily {
    pub coeffs: BTreeMap<Obj, Scalar>,
}

impl MultiplierFamily {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn set(&mut self, p: Obj, c: Scalar) {
        if c.is_zero() {
            self.coeffs.remove(&p);
        } else {
            self.coeffs.insert(p, c);
        }
    }

    pub fn mul(&self, other: &MultiplierFamily, field: &FieldSpec) -> MultiplierFamily {
        let mut out = MultiplierFamily::new();
        for (p, c) in &self.coeffs {
            if let Some(d) = other.coeffs.get(p) {
                out.set(*p, c.mul(d, field));
            }
        }
        out
    }

    pub fn is_idempotent(&self, field: &FieldSpec) -> bool {
        self.mul(self, field) == *self
    }
}

/// The projections `Π^L(a) = Σ_p ε(λ_p a) λ_p` and
/// `Π^R(a) = Σ_p ε(a ρ_p) ρ_p` as coefficient families, together with the
/// formal idempotent `E = Σ_l ρ_l ⊗ λ_l` (coefficient 1 on every object).
pub fn compute_projections(
    data: &PartialHopfData,
    a: &TotalElement,
) -> (MultiplierFamily, MultiplierFamily, MultiplierFamily) {
    let mut pi_l = MultiplierFamily::new();
    let mut pi_r = MultiplierFamily::new();
    for &p in &data.objects {
        pi_l.set(p, data.counit_value(&data.lambda_left(p, a)));
        pi_r.set(p, data.counit_value(&data.rho_right(p, a)));
    }
    let mut e = MultiplierFamily::new();
    for &l in &data.objects {
        e.set(l, Scalar::one());
    }
    (pi_l, pi_r, e)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unit_orthogonality_in_the_function_algebra() {
        let d = pair_groupoid(3);
        let u12 = d.unit_elem(1, 2);
        assert_eq!(d.mul(&u12, &u12), u12);
        // non-composable grades multiply to zero
        assert!(d.mul(&u12, &d.unit_elem(1, 3)).is_zero());
        assert!(d.mul(&u12, &d.unit_elem(2, 3)).is_zero());
        // 1(k|m)·a = a for a in a matching block
        assert_eq!(d.mul(&d.unit_elem(1, 2), &u12), u12);
    }

    #[test]
    fn coproduct_of_units_expands_over_middle_objects() {
        let d = pair_groupoid(2);
        let t = d.delta(&d.unit_elem(1, 2));
        // Δ(1(1|2)) = Σ_l 1(1|l) ⊗ 1(l|2)
        let mut expected = TensorElement::zero();
        for l in 1..=2 {
            expected = expected.add(&TensorElement::pure(
                &d,
                &d.unit_elem(1, l),
                &d.unit_elem(l, 2),
            ));
        }
        assert_eq!(t, expected);
    }

    #[test]
    fn projections_of_units() {
        let d = pair_groupoid(3);
        // Π^L(1(2|2)) = λ_2, Π^R(1(2|2)) = ρ_2
        let (pi_l, pi_r, e) = compute_projections(&d, &d.unit_elem(2, 2));
        assert_eq!(pi_l.coeffs, [(2, Scalar::one())].into_iter().collect());
        assert_eq!(pi_r.coeffs, [(2, Scalar::one())].into_iter().collect());
        // Π^L(1(1|2)) = 0: the counit vanishes on A(1 1; 2 2)
        let (pi_l, pi_r, _) = compute_projections(&d, &d.unit_elem(1, 2));
        assert!(pi_l.coeffs.is_empty());
        assert!(pi_r.coeffs.is_empty());
        // E·E = E as coefficient families
        assert!(e.is_idempotent(&d.field));
    }

    #[test]
    fn tensor_element_swap_is_involutive() {
        let d = pair_groupoid(2);
        let t = d.delta(&d.unit_elem(1, 2));
        assert_eq!(t.swap().swap(), t);
    }

    #[test]
    fn json_round_trip_is_byte_stable() {
        for d in [pair_groupoid(2), groupoid_algebra(&[vec![1, 2]])] {
            let v = data_to_json(&d);
            let d2 = data_from_json(&v).unwrap();
            assert_eq!(d2, d);
            let s1 = serde_json::to_string_pretty(&v).unwrap();
            let s2 = serde_json::to_string_pretty(&data_to_json(&d2)).unwrap();
            assert_eq!(s1, s2);
        }
    }

    #[test]
    fn json_rejects_malformed_input() {
        let v = serde_json::json!({"objects": [1], "blocks": {"1,1": 1}});
        assert!(matches!(
            data_from_json(&v),
            Err(crate::Error::Schema { .. })
        ));
    }
}
