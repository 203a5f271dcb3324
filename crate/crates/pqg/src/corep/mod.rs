//! Corepresentations: construction, verification, tensor products, duals,
//! generalized inverses, averaging of intertwiners, decomposition into
//! irreducibles, Schur orthogonality and Woronowicz-type characters.
//!
//! A corepresentation `X` of a [`PartialHopfData`] on a bigraded carrier `V`
//! is a family of blocks `X(k l; m n) ∈ A(k l; m n) ⊗ Hom(V_mn, V_kl)`,
//! stored as one coefficient matrix per algebra basis element. The defining
//! identities
//!
//! ```text
//! (Δ_pq ⊗ id)(X(k l; m n)) = X(k l; p q)₁₃ · X(p q; m n)₂₃
//! (ε ⊗ id)(X(k l; m n))    = δ_{(k,l),(m,n)} id
//! ```
//!
//! are checked by [`verify_corep`], never assumed.

mod decompose;
mod json;
mod schur;

pub use decompose::{decompose, is_irreducible, Summand};
pub use json::{character_table_to_json, corep_from_json, corep_to_json, schur_to_json};
pub use schur::{
    enumerate_irreducibles, peter_weyl_report, schur_report, verify_unitary,
    woronowicz_characters, BidualStructure, CharacterEntry, CharacterTable,
};

use crate::error::{Error, Result};
use crate::grading::{balanced_tensor, tensor_summands, BigradedSpace, BlockMap, Obj, Square};
use crate::linalg::Mat;
use crate::partial_hopf::{PartialHopfData, Scan, TotalElement};
use crate::report::VerificationReport;
use crate::scalar::Scalar;
use std::collections::{BTreeMap, BTreeSet};

/// A corepresentation on a finitely supported bigraded carrier.
///
/// `blocks[K]` has one matrix per basis element of `A(K)`; the matrix at
/// index `α` has shape `dim V_{k,l} × dim V_{m,n}`, so
/// `X(K) = Σ_α e_α ⊗ M_α`. Missing keys are zero blocks.
#[derive(Debug, Clone, PartialEq)]
pub struct Corep {
    pub carrier: BigradedSpace,
    pub blocks: BTreeMap<Square, Vec<Mat>>,
}

impl Corep {
    pub fn new(carrier: BigradedSpace) -> Self {
        Corep {
            carrier,
            blocks: BTreeMap::new(),
        }
    }

    /// Install one block, asserting coefficient shapes; all-zero blocks are
    /// dropped.
    pub fn set_block(&mut self, data: &PartialHopfData, sq: Square, mats: Vec<Mat>) {
        assert_eq!(mats.len(), data.dim(&sq), "coefficient count at {sq}");
        let rows = self.carrier.dim(sq.k, sq.l);
        let cols = self.carrier.dim(sq.m, sq.n);
        for m in &mats {
            assert_eq!((m.rows(), m.cols()), (rows, cols), "carrier shape at {sq}");
        }
        if mats.iter().all(Mat::is_zero) {
            self.blocks.remove(&sq);
        } else {
            self.blocks.insert(sq, mats);
        }
    }

    /// The coefficient matrices of `X(sq)`, zeros when the block is absent.
    pub fn mats(&self, data: &PartialHopfData, sq: &Square) -> Vec<Mat> {
        match self.blocks.get(sq) {
            Some(m) => m.clone(),
            None => vec![
                Mat::zeros(self.carrier.dim(sq.k, sq.l), self.carrier.dim(sq.m, sq.n));
                data.dim(sq)
            ],
        }
    }

    /// The matrix coefficient `(id ⊗ ω_{i,j})(X(sq)) = Σ_α (M_α)_{ij} e_α`.
    pub fn matrix_coefficient(
        &self,
        data: &PartialHopfData,
        sq: Square,
        i: usize,
        j: usize,
    ) -> TotalElement {
        let Some(mats) = self.blocks.get(&sq) else {
            return TotalElement::zero();
        };
        debug_assert_eq!(mats.len(), data.dim(&sq));
        let coeffs: Vec<Scalar> = mats.iter().map(|m| m.get(i, j).clone()).collect();
        TotalElement::single(sq, coeffs)
    }

    /// Total carrier dimension.
    pub fn total_dim(&self) -> usize {
        self.carrier.total_dim()
    }
}

/// The trivial corepresentation on the diagonal carrier `ℂ^(I)`:
/// `U(k k; m m) = 1(k|m)`.
pub fn trivial_corep(data: &PartialHopfData) -> Corep {
    let carrier = BigradedSpace::diagonal(data.objects.iter().copied());
    let mut x = Corep::new(carrier);
    for (&(k, m), coeffs) in &data.units {
        let sq = Square::unit(k, m);
        let mats = coeffs
            .iter()
            .map(|c| {
                let mut m1 = Mat::zeros(1, 1);
                m1.set(0, 0, c.clone());
                m1
            })
            .collect();
        x.set_block(data, sq, mats);
    }
    x
}

/// Check the two defining corepresentation identities on all blocks, plus
/// shape consistency of the stored data.
pub fn verify_corep(data: &PartialHopfData, x: &Corep) -> VerificationReport {
    let mut rep = VerificationReport::new();

    let mut grading = Scan::new("corep/grading");
    grading.check(
        x.carrier.objects == data.objects && x.carrier.is_rcf(),
        || "carrier object set differs from the algebra object set".into(),
    );
    for (sq, mats) in &x.blocks {
        grading.check(mats.len() == data.dim(sq) && data.dim(sq) > 0, || {
            format!("block {sq} has no matching algebra block")
        });
        let rows = x.carrier.dim(sq.k, sq.l);
        let cols = x.carrier.dim(sq.m, sq.n);
        grading.check(
            mats.iter().all(|m| (m.rows(), m.cols()) == (rows, cols)),
            || format!("block {sq} has mis-shaped coefficient matrices"),
        );
    }
    grading.emit(&mut rep);

    let carrier_pairs: Vec<(Obj, Obj)> = x.carrier.blocks().map(|(kl, _)| kl).collect();

    let mut comul = Scan::new("corep/comultiplication");
    for &(k, l) in &carrier_pairs {
        for &(m, n) in &carrier_pairs {
            let sq = Square::new(k, l, m, n);
            for (p, q) in data.object_pairs() {
                let up = Square::new(k, l, p, q);
                let down = Square::new(p, q, m, n);
                if [sq, up, down].iter().any(|s| data.out_of_window(s)) {
                    comul.skip();
                    continue;
                }
                let x_up = x.mats(data, &up);
                let x_down = x.mats(data, &down);
                let x_k = x.mats(data, &sq);
                let cop = data.coproduct.get(&(sq, (p, q)));
                for b in 0..data.dim(&up) {
                    for c in 0..data.dim(&down) {
                        // left side: coefficient of e_b ⊗ e_c in (Δ_pq ⊗ id)(X(sq))
                        let mut lhs =
                            Mat::zeros(x.carrier.dim(k, l), x.carrier.dim(m, n));
                        if let Some(mats) = cop {
                            for (alpha, mk) in x_k.iter().enumerate() {
                                let coeff = mats[alpha].get(b, c);
                                if !coeff.is_zero() {
                                    lhs = lhs.add(&mk.scale(coeff, &data.field));
                                }
                            }
                        }
                        // right side: M_b^{(k l; p q)} · M_c^{(p q; m n)}
                        let rhs = if x.carrier.dim(p, q) > 0 {
                            x_up[b].mul(&x_down[c], &data.field)
                        } else {
                            Mat::zeros(x.carrier.dim(k, l), x.carrier.dim(m, n))
                        };
                        comul.check(lhs == rhs, || {
                            format!("block {sq}, rows ({p},{q}), pair ({b},{c})")
                        });
                    }
                }
            }
        }
    }
    comul.emit(&mut rep);

    let mut counit = Scan::new("corep/counit");
    for &(k, l) in &carrier_pairs {
        for &(m, n) in &carrier_pairs {
            let sq = Square::new(k, l, m, n);
            if data.out_of_window(&sq) {
                counit.skip();
                continue;
            }
            let mut acc = Mat::zeros(x.carrier.dim(k, l), x.carrier.dim(m, n));
            if let Some(eps) = data.counit.get(&sq) {
                for (alpha, mk) in x.mats(data, &sq).iter().enumerate() {
                    if !eps[alpha].is_zero() {
                        acc = acc.add(&mk.scale(&eps[alpha], &data.field));
                    }
                }
            }
            let expected = if (k, l) == (m, n) {
                Mat::identity(x.carrier.dim(k, l))
            } else {
                Mat::zeros(x.carrier.dim(k, l), x.carrier.dim(m, n))
            };
            counit.check(acc == expected, || format!("block {sq}"));
        }
    }
    counit.emit(&mut rep);

    rep
}

/// The regular corepresentation generated by a bottom-homogeneous element:
/// `V_pq = {(id ⊗ f)(Δ_pq(a))}` with blocks `X(k l; p q)(1 ⊗ b) = Δ^op_kl(b)`.
pub fn regular_corep_from_element(data: &PartialHopfData, a: &TotalElement) -> Result<Corep> {
    if a.is_zero() {
        return Err(Error::Precondition(
            "regular corepresentation of the zero element".into(),
        ));
    }
    let bottoms: BTreeSet<(Obj, Obj)> = a.comps.keys().map(Square::bottom).collect();
    if bottoms.len() != 1 {
        return Err(Error::Precondition(
            "element is not homogeneous in the bottom row".into(),
        ));
    }
    let &(m, n) = bottoms.iter().next().unwrap();

    // Coordinates at fixed bottom (p, q): all (square, basis index) pairs.
    let col_index = |p: Obj, q: Obj| -> Vec<(Square, usize)> {
        let mut idx = Vec::new();
        for (sq, &d) in &data.blocks {
            if sq.bottom() == (p, q) {
                for i in 0..d {
                    idx.push((*sq, i));
                }
            }
        }
        idx
    };

    // Spanning vectors of V_pq: the left legs of Δ_pq(a) against the basis
    // of A(p q; m n), then row reduction for a canonical basis.
    let mut bases: BTreeMap<(Obj, Obj), (Vec<(Square, usize)>, Vec<Vec<Scalar>>)> =
        BTreeMap::new();
    for (p, q) in data.object_pairs() {
        let down = Square::new(p, q, m, n);
        let dc = data.dim(&down);
        if dc == 0 {
            continue;
        }
        let idx = col_index(p, q);
        let pos: BTreeMap<(Square, usize), usize> =
            idx.iter().enumerate().map(|(i, &k)| (k, i)).collect();
        let mut w = Mat::zeros(dc, idx.len());
        for (sq, v) in &a.comps {
            if let Some(mats) = data.coproduct.get(&(*sq, (p, q))) {
                let up = Square::new(sq.k, sq.l, p, q);
                for (alpha, coeff) in v.iter().enumerate() {
                    if coeff.is_zero() {
                        continue;
                    }
                    for beta in 0..data.dim(&up) {
                        let col = pos[&(up, beta)];
                        for c in 0..dc {
                            let add = coeff.mul(mats[alpha].get(beta, c), &data.field);
                            if !add.is_zero() {
                                w.set(c, col, w.get(c, col).add(&add));
                            }
                        }
                    }
                }
            }
        }
        let (r, pivots) = w.rref(&data.field);
        if pivots.is_empty() {
            continue;
        }
        let basis: Vec<Vec<Scalar>> = (0..pivots.len())
            .map(|row| (0..idx.len()).map(|j| r.get(row, j).clone()).collect())
            .collect();
        bases.insert((p, q), (idx, basis));
    }

    let mut carrier = BigradedSpace::new(data.objects.iter().copied());
    for (&(p, q), (_, basis)) in &bases {
        carrier.set_dim(p, q, basis.len());
    }
    let mut x = Corep::new(carrier);

    // Blocks: X(k l; p q)(1 ⊗ b_j) = Δ^op_kl(b_j), expressed in the basis of
    // V_kl by exact solving.
    let keys: Vec<(Obj, Obj)> = bases.keys().copied().collect();
    for &(p, q) in &keys {
        for &(k, l) in &keys {
            let sq = Square::new(k, l, p, q);
            let d = data.dim(&sq);
            if d == 0 {
                continue;
            }
            let (idx_pq, basis_pq) = &bases[&(p, q)];
            let (idx_kl, basis_kl) = &bases[&(k, l)];
            let pos_kl: BTreeMap<(Square, usize), usize> =
                idx_kl.iter().enumerate().map(|(i, &t)| (t, i)).collect();
            // basis matrix with the basis vectors of V_kl as columns
            let bmat = Mat::from_fn(idx_kl.len(), basis_kl.len(), |i, j| {
                basis_kl[j][i].clone()
            });
            let mut mats =
                vec![Mat::zeros(basis_kl.len(), basis_pq.len()); d];
            for (j, b) in basis_pq.iter().enumerate() {
                // Δ_kl(b) = Σ_α u_α ⊗ e_α with u_α over the (k,l) coordinates
                let mut u = vec![vec![Scalar::zero(); idx_kl.len()]; d];
                for (pos, &(sq2, gamma)) in idx_pq.iter().enumerate() {
                    let coeff = &b[pos];
                    if coeff.is_zero() {
                        continue;
                    }
                    if let Some(cop) = data.coproduct.get(&(sq2, (k, l))) {
                        let up2 = Square::new(sq2.k, sq2.l, k, l);
                        for beta in 0..data.dim(&up2) {
                            for (alpha, ua) in u.iter_mut().enumerate() {
                                let add =
                                    coeff.mul(cop[gamma].get(beta, alpha), &data.field);
                                if !add.is_zero() {
                                    let t = pos_kl[&(up2, beta)];
                                    ua[t] = ua[t].add(&add);
                                }
                            }
                        }
                    }
                }
                for (alpha, ua) in u.iter().enumerate() {
                    let sol = bmat.solve(ua, &data.field).ok_or_else(|| {
                        Error::Precondition(format!(
                            "coproduct of the generated space leaves it at {sq}"
                        ))
                    })?;
                    for (i, c) in sol.into_iter().enumerate() {
                        mats[alpha].set(i, j, c);
                    }
                }
            }
            x.set_block(data, sq, mats);
        }
    }
    Ok(x)
}

/// The tensor product `(X ⊛ Y)(k p; m q) = Σ_{l,n} X(k l; m n)₁₂ Y(l p; n q)₁₃`
/// on the balanced tensor carrier.
pub fn tensor(data: &PartialHopfData, x: &Corep, y: &Corep) -> Corep {
    assert_eq!(x.carrier.objects, y.carrier.objects, "mismatched carriers");
    let carrier = balanced_tensor(&x.carrier, &y.carrier);
    let pairs: Vec<(Obj, Obj)> = carrier.blocks().map(|(kl, _)| kl).collect();
    let mut out = Corep::new(carrier.clone());
    for &(k, p) in &pairs {
        for &(m, q) in &pairs {
            let sq = Square::new(k, p, m, q);
            let d = data.dim(&sq);
            if d == 0 {
                continue;
            }
            let rows = carrier.dim(k, p);
            let cols = carrier.dim(m, q);
            let mut mats = vec![Mat::zeros(rows, cols); d];
            for &(l, roff, _, _) in &tensor_summands(&x.carrier, &y.carrier, k, p) {
                for &(n, coff, _, _) in &tensor_summands(&x.carrier, &y.carrier, m, q) {
                    let kx = Square::new(k, l, m, n);
                    let ky = Square::new(l, p, n, q);
                    let (Some(mx), Some(my)) = (x.blocks.get(&kx), y.blocks.get(&ky))
                    else {
                        continue;
                    };
                    for (alpha, ma) in mx.iter().enumerate() {
                        if ma.is_zero() {
                            continue;
                        }
                        for (beta, mb) in my.iter().enumerate() {
                            if mb.is_zero() {
                                continue;
                            }
                            let prod = data.mul_basis(kx, alpha, ky, beta);
                            let Some(v) = prod.comps.get(&sq) else { continue };
                            let kr = ma.kron(mb, &data.field);
                            for (gamma, c) in v.iter().enumerate() {
                                if c.is_zero() {
                                    continue;
                                }
                                for i in 0..kr.rows() {
                                    for j in 0..kr.cols() {
                                        let e = kr.get(i, j);
                                        if e.is_zero() {
                                            continue;
                                        }
                                        let t = mats[gamma]
                                            .get(roff + i, coff + j)
                                            .add(&e.mul(c, &data.field));
                                        mats[gamma].set(roff + i, coff + j, t);
                                    }
                                }
                            }
                        }
                    }
                }
            }
            out.set_block(data, sq, mats);
        }
    }
    out
}

/// The left dual `X̂(k l; m n) = (S ⊗ transpose)(X(n m; l k))` on the dual
/// carrier.
pub fn left_dual(data: &PartialHopfData, x: &Corep) -> Result<Corep> {
    let Some(antipode) = &data.antipode else {
        return Err(Error::Precondition("left dual requires an antipode".into()));
    };
    let carrier = x.carrier.dual();
    let mut out = Corep::new(carrier.clone());
    for (src, mats) in &x.blocks {
        let dst = src.circ_bullet();
        let d = data.dim(&dst);
        if d == 0 {
            continue;
        }
        let Some(smat) = antipode.get(src) else {
            return Err(Error::Precondition(format!(
                "antipode matrix missing on block {src}"
            )));
        };
        let rows = carrier.dim(dst.k, dst.l);
        let cols = carrier.dim(dst.m, dst.n);
        let mut omats = vec![Mat::zeros(rows, cols); d];
        for (gamma, om) in omats.iter_mut().enumerate() {
            for (alpha, ma) in mats.iter().enumerate() {
                let c = smat.get(gamma, alpha);
                if !c.is_zero() {
                    *om = om.add(&ma.transpose().scale(c, &data.field));
                }
            }
        }
        out.set_block(data, dst, omats);
    }
    Ok(out)
}

/// The evaluation and coevaluation block maps exhibiting `left_dual(x)` as a
/// left dual: `ev_kk = Σ_p ev_{V_pk}` and `coev_kk = Σ_p coev_{V_kp}`.
pub fn duality_maps(x: &Corep, xdual: &Corep) -> (BlockMap, BlockMap) {
    let mut ev = BlockMap::new();
    let mut coev = BlockMap::new();
    for &k in &x.carrier.objects {
        // ev on (V̂ ⊗ V)_{k,k}: summand p pairs V̂_{k,p} = (V_{p,k})^* with V_{p,k}
        let ev_dim: usize = tensor_summands(&xdual.carrier, &x.carrier, k, k)
            .iter()
            .map(|&(_, _, a, b)| a * b)
            .sum();
        let mut em = Mat::zeros(1, ev_dim);
        for &(_, off, d1, d2) in &tensor_summands(&xdual.carrier, &x.carrier, k, k) {
            debug_assert_eq!(d1, d2);
            for i in 0..d1 {
                em.set(0, off + i * d2 + i, Scalar::one());
            }
        }
        ev.set(k, k, em);
        // coev into (V ⊗ V̂)_{k,k}
        let coev_dim: usize = tensor_summands(&x.carrier, &xdual.carrier, k, k)
            .iter()
            .map(|&(_, _, a, b)| a * b)
            .sum();
        let mut cm = Mat::zeros(coev_dim, 1);
        for &(_, off, d1, d2) in &tensor_summands(&x.carrier, &xdual.carrier, k, k) {
            debug_assert_eq!(d1, d2);
            for i in 0..d1 {
                cm.set(off + i * d2 + i, 0, Scalar::one());
            }
        }
        coev.set(k, k, cm);
    }
    (ev, coev)
}

/// Verify that ev/coev are corepresentation morphisms and satisfy both snake
/// identities.
pub fn verify_duality(data: &PartialHopfData, x: &Corep) -> Result<VerificationReport> {
    let xd = left_dual(data, x)?;
    let (ev, coev) = duality_maps(x, &xd);
    let triv = trivial_corep(data);
    let mut rep = VerificationReport::new();

    let dual_tensor = tensor(data, &xd, x);
    let ev_defect = morphism_defect(data, &dual_tensor, &triv, &ev);
    rep.record(
        "corep/dual-ev-morphism",
        ev_defect.is_none(),
        ev_defect.unwrap_or_default(),
    );
    let tensor_dual = tensor(data, x, &xd);
    let coev_defect = morphism_defect(data, &triv, &tensor_dual, &coev);
    rep.record(
        "corep/dual-coev-morphism",
        coev_defect.is_none(),
        coev_defect.unwrap_or_default(),
    );

    // snake on V: Σ_b coev_kk[l; a, b] · ev_ll[k; b, j] = δ_{a,j} on V_kl
    let mut snake = Scan::new("corep/dual-snake");
    for ((k, l), dim) in x.carrier.blocks() {
        let coev_kk = coev.get(k, k);
        let ev_ll = ev.get(l, l);
        let coff = tensor_summands(&x.carrier, &xd.carrier, k, k)
            .into_iter()
            .find(|&(p, ..)| p == l)
            .map(|(_, off, ..)| off);
        let eoff = tensor_summands(&xd.carrier, &x.carrier, l, l)
            .into_iter()
            .find(|&(p, ..)| p == k)
            .map(|(_, off, ..)| off);
        let (Some(cm), Some(em), Some(coff), Some(eoff)) = (coev_kk, ev_ll, coff, eoff)
        else {
            snake.check(dim == 0, || format!("missing duality data on V_({k},{l})"));
            continue;
        };
        let d = dim; // dim V_kl = dim V̂_lk
        for a in 0..d {
            for j in 0..d {
                let mut s = Scalar::zero();
                for b in 0..d {
                    s = s.add(
                        &cm.get(coff + a * d + b, 0)
                            .mul(em.get(0, eoff + b * d + j), &data.field),
                    );
                }
                let expected = if a == j { Scalar::one() } else { Scalar::zero() };
                snake.check(s == expected, || format!("V_({k},{l}) entry ({a},{j})"));
            }
        }
        // snake on V̂_lk: Σ_a ev_ll[k; b, a] · coev_kk[l; a, j] = δ_{b,j}
        for b in 0..d {
            for j in 0..d {
                let mut s = Scalar::zero();
                for a in 0..d {
                    s = s.add(
                        &em.get(0, eoff + b * d + a)
                            .mul(cm.get(coff + a * d + j, 0), &data.field),
                    );
                }
                let expected = if b == j { Scalar::one() } else { Scalar::zero() };
                snake.check(s == expected, || {
                    format!("dual leg of V_({k},{l}) entry ({b},{j})")
                });
            }
        }
    }
    snake.emit(&mut rep);
    Ok(rep)
}

/// The generalized-inverse block family `Z(k l; m n) = (S ⊗ id)(X(n m; l k))`
/// with `Z(K) ∈ A(K) ⊗ Hom(V_{l,k}, V_{n,m})`.
pub fn inverse_family(
    data: &PartialHopfData,
    x: &Corep,
) -> Result<BTreeMap<Square, Vec<Mat>>> {
    let Some(antipode) = &data.antipode else {
        return Err(Error::Precondition(
            "generalized inverse requires an antipode".into(),
        ));
    };
    let mut z: BTreeMap<Square, Vec<Mat>> = BTreeMap::new();
    for (src, mats) in &x.blocks {
        let dst = src.circ_bullet();
        let d = data.dim(&dst);
        if d == 0 {
            continue;
        }
        let Some(smat) = antipode.get(src) else {
            return Err(Error::Precondition(format!(
                "antipode matrix missing on block {src}"
            )));
        };
        let rows = x.carrier.dim(src.k, src.l);
        let cols = x.carrier.dim(src.m, src.n);
        let mut omats = vec![Mat::zeros(rows, cols); d];
        for (gamma, om) in omats.iter_mut().enumerate() {
            for (alpha, ma) in mats.iter().enumerate() {
                let c = smat.get(gamma, alpha);
                if !c.is_zero() {
                    *om = om.add(&ma.scale(c, &data.field));
                }
            }
        }
        if !omats.iter().all(Mat::is_zero) {
            z.insert(dst, omats);
        }
    }
    Ok(z)
}

fn z_mats(
    data: &PartialHopfData,
    x: &Corep,
    z: &BTreeMap<Square, Vec<Mat>>,
    sq: &Square,
) -> Vec<Mat> {
    match z.get(sq) {
        Some(m) => m.clone(),
        None => vec![
            Mat::zeros(x.carrier.dim(sq.n, sq.m), x.carrier.dim(sq.l, sq.k));
            data.dim(sq)
        ],
    }
}

/// Compute `Z = (S ⊗ id)(X)` and verify the partial-inverse sum identities
/// together with `XZX = X` and `ZXZ = Z` in coefficient form.
pub fn generalized_inverse(
    data: &PartialHopfData,
    x: &Corep,
) -> Result<(BTreeMap<Square, Vec<Mat>>, VerificationReport)> {
    let z = inverse_family(data, x)?;
    let mut rep = VerificationReport::new();
    let objects: Vec<Obj> = data.objects.iter().copied().collect();
    let carrier_pairs: Vec<(Obj, Obj)> = x.carrier.blocks().map(|(kl, _)| kl).collect();

    // Σ_n X(k l; m n) · Z(l k'; n m) = δ_{k,k'} 1(k|m) ⊗ id_{V_kl}
    let mut left = Scan::new("corep/inverse-left");
    for &(k, l) in &carrier_pairs {
        for &(kp, lp) in &carrier_pairs {
            if lp != l {
                continue;
            }
            for &m in &objects {
                let target = Square::new(k, kp, m, m);
                let dt = data.dim(&target);
                let dim_kl = x.carrier.dim(k, l);
                let dim_kpl = x.carrier.dim(kp, l);
                let mut acc = vec![Mat::zeros(dim_kl, dim_kpl); dt.max(1)];
                let mut skipped = false;
                for &n in &objects {
                    let sx = Square::new(k, l, m, n);
                    let sz = Square::new(l, kp, n, m);
                    if data.out_of_window(&sx) || data.out_of_window(&sz) {
                        skipped = true;
                        continue;
                    }
                    let mx = x.mats(data, &sx);
                    let mz = z_mats(data, x, &z, &sz);
                    for (alpha, ma) in mx.iter().enumerate() {
                        if ma.is_zero() {
                            continue;
                        }
                        for (gamma, mg) in mz.iter().enumerate() {
                            if mg.is_zero() {
                                continue;
                            }
                            let prod = data.mul_basis(sx, alpha, sz, gamma);
                            let hom = ma.mul(mg, &data.field);
                            if let Some(v) = prod.comps.get(&target) {
                                for (delta, c) in v.iter().enumerate() {
                                    if !c.is_zero() {
                                        acc[delta] =
                                            acc[delta].add(&hom.scale(c, &data.field));
                                    }
                                }
                            }
                        }
                    }
                }
                if skipped {
                    left.skip();
                    continue;
                }
                let unit = if k == kp {
                    data.units.get(&(k, m)).cloned()
                } else {
                    None
                };
                for delta in 0..dt {
                    let expected = match &unit {
                        Some(u) if !u[delta].is_zero() => {
                            Mat::identity(dim_kl).scale(&u[delta], &data.field)
                        }
                        _ => Mat::zeros(dim_kl, dim_kpl),
                    };
                    left.check(acc[delta] == expected, || {
                        format!("(k,l,m,k') = ({k},{l},{m},{kp}), coefficient {delta}")
                    });
                }
            }
        }
    }
    left.emit(&mut rep);

    // Σ_m Z(n m; l k) · X(m n; k l') = δ_{l,l'} 1(n|l) ⊗ id_{V_kl}
    let mut right = Scan::new("corep/inverse-right");
    for &(k, l) in &carrier_pairs {
        for &(kp, lp) in &carrier_pairs {
            if kp != k {
                continue;
            }
            for &n in &objects {
                let target = Square::new(n, n, l, lp);
                let dt = data.dim(&target);
                let dim_kl = x.carrier.dim(k, l);
                let dim_klp = x.carrier.dim(k, lp);
                let mut acc = vec![Mat::zeros(dim_kl, dim_klp); dt.max(1)];
                let mut skipped = false;
                for &m in &objects {
                    let sz = Square::new(n, m, l, k);
                    let sx = Square::new(m, n, k, lp);
                    if data.out_of_window(&sz) || data.out_of_window(&sx) {
                        skipped = true;
                        continue;
                    }
                    let mz = z_mats(data, x, &z, &sz);
                    let mx = x.mats(data, &sx);
                    for (gamma, mg) in mz.iter().enumerate() {
                        if mg.is_zero() {
                            continue;
                        }
                        for (alpha, ma) in mx.iter().enumerate() {
                            if ma.is_zero() {
                                continue;
                            }
                            let prod = data.mul_basis(sz, gamma, sx, alpha);
                            let hom = mg.mul(ma, &data.field);
                            if let Some(v) = prod.comps.get(&target) {
                                for (delta, c) in v.iter().enumerate() {
                                    if !c.is_zero() {
                                        acc[delta] =
                                            acc[delta].add(&hom.scale(c, &data.field));
                                    }
                                }
                            }
                        }
                    }
                }
                if skipped {
                    right.skip();
                    continue;
                }
                let unit = if l == lp {
                    data.units.get(&(n, l)).cloned()
                } else {
                    None
                };
                for delta in 0..dt {
                    let expected = match &unit {
                        Some(u) if !u[delta].is_zero() => {
                            Mat::identity(dim_kl).scale(&u[delta], &data.field)
                        }
                        _ => Mat::zeros(dim_kl, dim_klp),
                    };
                    right.check(acc[delta] == expected, || {
                        format!("(n,l,k,l') = ({n},{l},{k},{lp}), coefficient {delta}")
                    });
                }
            }
        }
    }
    right.emit(&mut rep);

    // XZX = X blockwise: Σ_{b,c} X(k l; m b)·Z(l c; b m)·X(c l; m n) = X(k l; m n)
    let mut xzx = Scan::new("corep/inverse-xzx");
    for &(k, l) in &carrier_pairs {
        for &(m, n) in &carrier_pairs {
            let sq = Square::new(k, l, m, n);
            let d = data.dim(&sq);
            if d == 0 {
                continue;
            }
            if data.out_of_window(&sq) {
                xzx.skip();
                continue;
            }
            let dim_kl = x.carrier.dim(k, l);
            let dim_mn = x.carrier.dim(m, n);
            let mut acc = vec![Mat::zeros(dim_kl, dim_mn); d];
            for &b in &objects {
                for &c in &objects {
                    let s1 = Square::new(k, l, m, b);
                    let s2 = Square::new(l, c, b, m);
                    let s3 = Square::new(c, l, m, n);
                    let m1 = x.mats(data, &s1);
                    let m2 = z_mats(data, x, &z, &s2);
                    let m3 = x.mats(data, &s3);
                    for (a1, ma1) in m1.iter().enumerate() {
                        if ma1.is_zero() {
                            continue;
                        }
                        for (a2, ma2) in m2.iter().enumerate() {
                            if ma2.is_zero() {
                                continue;
                            }
                            let p12 = data.mul_basis(s1, a1, s2, a2);
                            if p12.is_zero() {
                                continue;
                            }
                            let h12 = ma1.mul(ma2, &data.field);
                            for (a3, ma3) in m3.iter().enumerate() {
                                if ma3.is_zero() {
                                    continue;
                                }
                                let p = data.mul(&p12, &data.basis_elem(s3, a3));
                                let Some(v) = p.comps.get(&sq) else { continue };
                                let hom = h12.mul(ma3, &data.field);
                                for (delta, coeff) in v.iter().enumerate() {
                                    if !coeff.is_zero() {
                                        acc[delta] =
                                            acc[delta].add(&hom.scale(coeff, &data.field));
                                    }
                                }
                            }
                        }
                    }
                }
            }
            let expected = x.mats(data, &sq);
            for delta in 0..d {
                xzx.check(acc[delta] == expected[delta], || {
                    format!("block {sq}, coefficient {delta}")
                });
            }
        }
    }
    xzx.emit(&mut rep);

    // ZXZ = Z blockwise: Σ_{a,d} Z(k a; m n)·X(a k; n d)·Z(k l; d n) = Z(k l; m n)
    let mut zxz = Scan::new("corep/inverse-zxz");
    for sq in data.squares() {
        let (k, l, m, n) = (sq.k, sq.l, sq.m, sq.n);
        if x.carrier.dim(l, k) == 0 || x.carrier.dim(n, m) == 0 {
            continue;
        }
        if data.out_of_window(&sq) {
            zxz.skip();
            continue;
        }
        let d = data.dim(&sq);
        let mut acc =
            vec![Mat::zeros(x.carrier.dim(n, m), x.carrier.dim(l, k)); d];
        for &a in &objects {
            for &dd in &objects {
                let s1 = Square::new(k, a, m, n);
                let s2 = Square::new(a, k, n, dd);
                let s3 = Square::new(k, l, dd, n);
                let m1 = z_mats(data, x, &z, &s1);
                let m2 = x.mats(data, &s2);
                let m3 = z_mats(data, x, &z, &s3);
                for (a1, ma1) in m1.iter().enumerate() {
                    if ma1.is_zero() {
                        continue;
                    }
                    for (a2, ma2) in m2.iter().enumerate() {
                        if ma2.is_zero() {
                            continue;
                        }
                        let p12 = data.mul_basis(s1, a1, s2, a2);
                        if p12.is_zero() {
                            continue;
                        }
                        let h12 = ma1.mul(ma2, &data.field);
                        for (a3, ma3) in m3.iter().enumerate() {
                            if ma3.is_zero() {
                                continue;
                            }
                            let p = data.mul(&p12, &data.basis_elem(s3, a3));
                            let Some(v) = p.comps.get(&sq) else { continue };
                            let hom = h12.mul(ma3, &data.field);
                            for (delta, coeff) in v.iter().enumerate() {
                                if !coeff.is_zero() {
                                    acc[delta] =
                                        acc[delta].add(&hom.scale(coeff, &data.field));
                                }
                            }
                        }
                    }
                }
            }
        }
        let expected = z_mats(data, x, &z, &sq);
        for delta in 0..d {
            zxz.check(acc[delta] == expected[delta], || {
                format!("block {sq}, coefficient {delta}")
            });
        }
    }
    zxz.emit(&mut rep);

    Ok((z, rep))
}

/// A grading-preserving family `T_kl : V_kl → W_kl` satisfying
/// `(1 ⊗ T_kl) X(k l; m n) = Y(k l; m n) (1 ⊗ T_mn)`; checked on
/// construction.
#[derive(Debug, Clone, PartialEq)]
pub struct CorepMorphism {
    pub blocks: BlockMap,
}

impl CorepMorphism {
    pub fn new(
        data: &PartialHopfData,
        x: &Corep,
        y: &Corep,
        blocks: BlockMap,
    ) -> Result<Self> {
        if let Some(w) = morphism_defect(data, x, y, &blocks) {
            return Err(Error::Precondition(format!("not a morphism: {w}")));
        }
        Ok(CorepMorphism { blocks })
    }

    pub fn is_zero(&self) -> bool {
        self.blocks.is_zero()
    }
}

fn blockmap_mat(t: &BlockMap, k: Obj, l: Obj, rows: usize, cols: usize) -> Mat {
    match t.get(k, l) {
        Some(m) => {
            assert_eq!((m.rows(), m.cols()), (rows, cols), "block map shape at ({k},{l})");
            m.clone()
        }
        None => Mat::zeros(rows, cols),
    }
}

/// First violated instance of the morphism relation, if any.
pub fn morphism_defect(
    data: &PartialHopfData,
    x: &Corep,
    y: &Corep,
    t: &BlockMap,
) -> Option<String> {
    for ((k, l), m) in &t.blocks {
        let rows = y.carrier.dim(*k, *l);
        let cols = x.carrier.dim(*k, *l);
        if (m.rows(), m.cols()) != (rows, cols) {
            return Some(format!("mis-shaped block at ({k},{l})"));
        }
    }
    for sq in data.squares() {
        let t_kl = blockmap_mat(
            t,
            sq.k,
            sq.l,
            y.carrier.dim(sq.k, sq.l),
            x.carrier.dim(sq.k, sq.l),
        );
        let t_mn = blockmap_mat(
            t,
            sq.m,
            sq.n,
            y.carrier.dim(sq.m, sq.n),
            x.carrier.dim(sq.m, sq.n),
        );
        let mx = x.mats(data, &sq);
        let my = y.mats(data, &sq);
        for alpha in 0..data.dim(&sq) {
            let lhs = t_kl.mul(&mx[alpha], &data.field);
            let rhs = my[alpha].mul(&t_mn, &data.field);
            if lhs != rhs {
                return Some(format!("block {sq}, coefficient {alpha}"));
            }
        }
    }
    None
}

/// Exact basis of the space of corepresentation morphisms `x → y`.
pub fn morphism_space(data: &PartialHopfData, x: &Corep, y: &Corep) -> Vec<BlockMap> {
    // unknown layout: entries of T_kl on pairs where both carriers are nonzero
    let mut layout: BTreeMap<(Obj, Obj), (usize, usize, usize)> = BTreeMap::new();
    let mut total = 0usize;
    for ((k, l), dx) in x.carrier.blocks() {
        let dy = y.carrier.dim(k, l);
        if dy > 0 {
            layout.insert((k, l), (total, dy, dx));
            total += dy * dx;
        }
    }
    let mut rows: Vec<Vec<Scalar>> = Vec::new();
    for sq in data.squares() {
        let mx = x.mats(data, &sq);
        let my = y.mats(data, &sq);
        let top = layout.get(&(sq.k, sq.l)).copied();
        let bot = layout.get(&(sq.m, sq.n)).copied();
        let eq_rows = y.carrier.dim(sq.k, sq.l);
        let eq_cols = x.carrier.dim(sq.m, sq.n);
        for alpha in 0..data.dim(&sq) {
            for r in 0..eq_rows {
                for c in 0..eq_cols {
                    let mut row = vec![Scalar::zero(); total];
                    let mut nonzero = false;
                    // (T_kl · Mx_α)_{r,c} = Σ_s T_kl[r,s]·Mx[s,c]
                    if let Some((off, _, dxc)) = top {
                        for s in 0..dxc {
                            let v = mx[alpha].get(s, c);
                            if !v.is_zero() {
                                row[off + r * dxc + s] = row[off + r * dxc + s].add(v);
                                nonzero = true;
                            }
                        }
                    }
                    // -(My_α · T_mn)_{r,c} = -Σ_s My[r,s]·T_mn[s,c]
                    if let Some((off, _, dxc)) = bot {
                        for s in 0..y.carrier.dim(sq.m, sq.n) {
                            let v = my[alpha].get(r, s);
                            if !v.is_zero() {
                                row[off + s * dxc + c] =
                                    row[off + s * dxc + c].sub(v);
                                nonzero = true;
                            }
                        }
                    }
                    if nonzero {
                        rows.push(row);
                    }
                }
            }
        }
    }
    let system = if rows.is_empty() {
        Mat::zeros(1, total)
    } else {
        Mat::from_rows(rows)
    };
    system
        .nullspace(&data.field)
        .into_iter()
        .map(|v| {
            let mut bm = BlockMap::new();
            for (&(k, l), &(off, dy, dx)) in &layout {
                let m = Mat::from_fn(dy, dx, |i, j| v[off + i * dx + j].clone());
                bm.set(k, l, m);
            }
            bm
        })
        .collect()
}

/// Average a bigraded map supported at `(m, n)` into a pair of
/// corepresentation morphisms `x → y`:
///
/// ```text
/// Ť_kl = (φ ⊗ id)(Y⁻¹(n m; l k) (1 ⊗ T_mn) X(m n; k l))
/// T̂_kl = (φ ⊗ id)(Y(k l; m n) (1 ⊗ T_mn) X⁻¹(l k; n m))
/// ```
pub fn average_intertwiner(
    data: &PartialHopfData,
    t: &BlockMap,
    x: &Corep,
    y: &Corep,
    m: Obj,
    n: Obj,
) -> Result<(CorepMorphism, CorepMorphism)> {
    if data.integral.is_none() {
        return Err(Error::Precondition(
            "averaging requires an invariant integral".into(),
        ));
    }
    let zx = inverse_family(data, x)?;
    let zy = inverse_family(data, y)?;
    let t_mn = blockmap_mat(t, m, n, y.carrier.dim(m, n), x.carrier.dim(m, n));

    let mut check = BlockMap::new();
    let mut hat = BlockMap::new();
    for ((k, l), _) in x.carrier.blocks() {
        let dy = y.carrier.dim(k, l);
        let dx = x.carrier.dim(k, l);
        if dy == 0 {
            continue;
        }
        // Ť
        let sz = Square::new(n, m, l, k);
        let sx = Square::new(m, n, k, l);
        let mz = z_mats(data, y, &zy, &sz);
        let mx = x.mats(data, &sx);
        let mut acc = Mat::zeros(dy, dx);
        for (gamma, mg) in mz.iter().enumerate() {
            if mg.is_zero() {
                continue;
            }
            for (alpha, ma) in mx.iter().enumerate() {
                if ma.is_zero() {
                    continue;
                }
                let phi = data.integral_value(&data.mul_basis(sz, gamma, sx, alpha));
                if phi.is_zero() {
                    continue;
                }
                let hom = mg.mul(&t_mn, &data.field).mul(ma, &data.field);
                acc = acc.add(&hom.scale(&phi, &data.field));
            }
        }
        check.set(k, l, acc);
        // T̂
        let sy = Square::new(k, l, m, n);
        let szx = Square::new(l, k, n, m);
        let my = y.mats(data, &sy);
        let mzx = z_mats(data, x, &zx, &szx);
        let mut acc = Mat::zeros(dy, dx);
        for (delta, md) in my.iter().enumerate() {
            if md.is_zero() {
                continue;
            }
            for (gamma, mg) in mzx.iter().enumerate() {
                if mg.is_zero() {
                    continue;
                }
                let phi = data.integral_value(&data.mul_basis(sy, delta, szx, gamma));
                if phi.is_zero() {
                    continue;
                }
                let hom = md.mul(&t_mn, &data.field).mul(mg, &data.field);
                acc = acc.add(&hom.scale(&phi, &data.field));
            }
        }
        hat.set(k, l, acc);
    }
    Ok((
        CorepMorphism::new(data, x, y, check)?,
        CorepMorphism::new(data, x, y, hat)?,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partial_hopf::{groupoid_algebra, groupoid_union, pair_groupoid, product};

    fn assert_no_failures(rep: &VerificationReport) {
        let fails: Vec<String> = rep
            .failures()
            .map(|c| format!("{}: {:?}", c.axiom, c.witness))
            .collect();
        assert!(fails.is_empty(), "failed checks: {fails:?}");
    }

    #[test]
    fn trivial_corep_verifies_on_all_fixtures() {
        for data in [
            pair_groupoid(3),
            groupoid_union(&[vec![1, 2], vec![3]]),
            groupoid_algebra(&[vec![1, 2]]),
            product(
                &pair_groupoid(2),
                &groupoid_algebra(&[vec![1, 2]]),
                |x, y| x * 10 + y,
            ),
        ] {
            let u = trivial_corep(&data);
            assert_no_failures(&verify_corep(&data, &u));
        }
    }

    #[test]
    fn zeroed_block_fails_the_counit_identity() {
        let data = pair_groupoid(2);
        let mut u = trivial_corep(&data);
        u.blocks.remove(&Square::unit(1, 1));
        let rep = verify_corep(&data, &u);
        assert!(rep
            .failures()
            .any(|c| c.axiom == "corep/counit"));
    }

    #[test]
    fn scaled_block_fails_comultiplication() {
        let data = pair_groupoid(2);
        let mut u = trivial_corep(&data);
        let mats = u.blocks.get_mut(&Square::unit(1, 2)).unwrap();
        mats[0] = mats[0].scale(&Scalar::from_int(2), &data.field);
        let rep = verify_corep(&data, &u);
        assert!(rep
            .failures()
            .any(|c| c.axiom == "corep/comultiplication"));
    }

    #[test]
    fn regular_corep_of_a_unit_is_the_trivial_one() {
        let data = pair_groupoid(3);
        let x = regular_corep_from_element(&data, &data.unit_elem(1, 2)).unwrap();
        assert_no_failures(&verify_corep(&data, &x));
        assert_eq!(x.carrier, trivial_corep(&data).carrier);
        let homs = morphism_space(&data, &trivial_corep(&data), &x);
        assert_eq!(homs.len(), 1);
    }

    #[test]
    fn regular_corep_of_a_matrix_unit_is_one_dimensional() {
        let data = groupoid_algebra(&[vec![1, 2]]);
        let sq = Square::new(1, 2, 1, 2);
        let x = regular_corep_from_element(&data, &data.basis_elem(sq, 0)).unwrap();
        assert_no_failures(&verify_corep(&data, &x));
        assert_eq!(x.total_dim(), 1);
        assert_eq!(x.carrier.dim(1, 2), 1);
    }

    #[test]
    fn regular_corep_preconditions() {
        let data = pair_groupoid(2);
        assert!(matches!(
            regular_corep_from_element(&data, &TotalElement::zero()),
            Err(Error::Precondition(_))
        ));
        let mixed = data.unit_elem(1, 1).add(&data.unit_elem(1, 2));
        assert!(matches!(
            regular_corep_from_element(&data, &mixed),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn tensor_with_the_trivial_corep_is_equivalent() {
        let data = groupoid_algebra(&[vec![1, 2]]);
        let u = trivial_corep(&data);
        let sq = Square::new(1, 2, 1, 2);
        let x = regular_corep_from_element(&data, &data.basis_elem(sq, 0)).unwrap();
        let ux = tensor(&data, &u, &x);
        assert_no_failures(&verify_corep(&data, &ux));
        assert_eq!(ux.total_dim(), x.total_dim());
        assert_eq!(morphism_space(&data, &ux, &x).len(), 1);
    }

    #[test]
    fn tensor_square_of_the_trivial_corep_verifies() {
        let data = pair_groupoid(3);
        let u = trivial_corep(&data);
        let uu = tensor(&data, &u, &u);
        assert_no_failures(&verify_corep(&data, &uu));
        assert_eq!(morphism_space(&data, &uu, &u).len(), 1);
    }

    #[test]
    fn left_dual_of_the_trivial_corep_is_trivial() {
        let data = pair_groupoid(2);
        let u = trivial_corep(&data);
        let ud = left_dual(&data, &u).unwrap();
        assert_no_failures(&verify_corep(&data, &ud));
        // the diagonal carrier is self-dual and 1(k|m) maps to 1(m|k)
        assert_eq!(ud.carrier, u.carrier);
        assert_eq!(morphism_space(&data, &ud, &u).len(), 1);
    }

    #[test]
    fn duality_report_passes_on_fixtures() {
        for data in [
            pair_groupoid(2),
            groupoid_union(&[vec![1, 2], vec![3]]),
            groupoid_algebra(&[vec![1, 2]]),
        ] {
            let u = trivial_corep(&data);
            assert_no_failures(&verify_duality(&data, &u).unwrap());
        }
        let data = groupoid_algebra(&[vec![1, 2]]);
        let sq = Square::new(1, 2, 1, 2);
        let x = regular_corep_from_element(&data, &data.basis_elem(sq, 0)).unwrap();
        assert_no_failures(&verify_duality(&data, &x).unwrap());
    }

    #[test]
    fn generalized_inverse_identities_hold() {
        for data in [
            pair_groupoid(3),
            groupoid_union(&[vec![1, 2], vec![3]]),
            groupoid_algebra(&[vec![1, 2]]),
        ] {
            let u = trivial_corep(&data);
            let (_, rep) = generalized_inverse(&data, &u).unwrap();
            assert_no_failures(&rep);
        }
        let data = groupoid_algebra(&[vec![1, 2]]);
        let sq = Square::new(2, 1, 2, 1);
        let x = regular_corep_from_element(&data, &data.basis_elem(sq, 0)).unwrap();
        let (z, rep) = generalized_inverse(&data, &x).unwrap();
        assert_no_failures(&rep);
        // Z(1 2; 1 2) carries the antipode image of X(2 1; 2 1)
        assert!(z.contains_key(&Square::new(1, 2, 1, 2)));
    }

    #[test]
    fn morphism_space_counts_connected_components() {
        let one_class = pair_groupoid(3);
        let u = trivial_corep(&one_class);
        assert_eq!(morphism_space(&one_class, &u, &u).len(), 1);

        let two_classes = groupoid_union(&[vec![1, 2], vec![3]]);
        let u = trivial_corep(&two_classes);
        assert_eq!(morphism_space(&two_classes, &u, &u).len(), 2);
    }

    #[test]
    fn morphism_constructor_rejects_non_intertwiners() {
        let data = pair_groupoid(2);
        let u = trivial_corep(&data);
        let mut t = BlockMap::new();
        t.set(1, 1, Mat::identity(1));
        // scaling only one component breaks the relation on 1(1|2)
        assert!(CorepMorphism::new(&data, &u, &u, t).is_err());
        let id = morphism_space(&data, &u, &u).remove(0);
        assert!(CorepMorphism::new(&data, &u, &u, id).is_ok());
    }

    #[test]
    fn averaging_the_zero_map_gives_zero() {
        let data = pair_groupoid(2);
        let u = trivial_corep(&data);
        let (check, hat) =
            average_intertwiner(&data, &BlockMap::new(), &u, &u, 1, 1).unwrap();
        assert!(check.is_zero());
        assert!(hat.is_zero());
    }

    #[test]
    fn averaging_a_morphism_seed_reproduces_an_intertwiner() {
        let data = pair_groupoid(3);
        let u = trivial_corep(&data);
        let mut t = BlockMap::new();
        t.set(1, 1, Mat::identity(1));
        let (check, hat) = average_intertwiner(&data, &t, &u, &u, 1, 1).unwrap();
        // both averages are honest morphisms, so they are multiples of the
        // identity; the seed was nonzero in an invariant direction
        assert!(!check.is_zero());
        assert!(!hat.is_zero());
    }

    #[test]
    fn averaging_between_inequivalent_coreps_vanishes() {
        let data = groupoid_algebra(&[vec![1, 2]]);
        let x = regular_corep_from_element(
            &data,
            &data.basis_elem(Square::new(1, 2, 1, 2), 0),
        )
        .unwrap();
        let y = regular_corep_from_element(
            &data,
            &data.basis_elem(Square::new(2, 1, 2, 1), 0),
        )
        .unwrap();
        assert!(morphism_space(&data, &x, &y).is_empty());
        let mut t = BlockMap::new();
        t.set(1, 2, Mat::identity(1));
        // seed at the only pair where x has support; y lives at (2, 1)
        let (check, hat) = average_intertwiner(&data, &t, &x, &x, 1, 2).unwrap();
        assert!(!check.is_zero());
        assert!(!hat.is_zero());
        let (cz, hz) = average_intertwiner(&data, &BlockMap::new(), &x, &y, 1, 2).unwrap();
        assert!(cz.is_zero());
        assert!(hz.is_zero());
    }
}
