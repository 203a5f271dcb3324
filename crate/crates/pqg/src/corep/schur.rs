//! Schur orthogonality, unitarity, Peter–Weyl completeness and the
//! one-parameter family of modular characters.
//!
//! All relations are verified exactly. The characters `f_z` are produced for
//! integer `z` only; the analytic continuation to complex `z` (an
//! entire-growth condition on the defining family) is out of scope and is
//! recorded as unchecked provenance on the [`CharacterTable`].

use super::decompose::{decompose, is_irreducible};
use super::{
    inverse_family, morphism_space, regular_corep_from_element, Corep,
};
use crate::error::{Error, Result};
use crate::grading::{BlockMap, Obj, Square};
use crate::linalg::{psd_check, Mat, PsdOutcome};
use crate::partial_hopf::{PartialHopfData, Scan, TotalElement};
use crate::report::VerificationReport;
use crate::scalar::{Scalar, Sign};
use std::collections::{BTreeMap, BTreeSet};

/// Check that the generalized inverse of a corepresentation coincides with
/// its blockwise star-adjoint, `(X⁻¹)(k l; m n) = (X(l k; n m))*`.
pub fn verify_unitary(data: &PartialHopfData, x: &Corep) -> Result<VerificationReport> {
    let Some(star) = &data.star else {
        return Err(Error::Precondition(
            "unitarity requires a star structure".into(),
        ));
    };
    let z = inverse_family(data, x)?;
    let mut rep = VerificationReport::new();
    let mut scan = Scan::new("corep/unitary");
    let mut keys: BTreeSet<Square> = z.keys().copied().collect();
    for src in x.blocks.keys() {
        keys.insert(src.star_grade());
    }
    for sq in keys {
        if data.dim(&sq) == 0 {
            continue;
        }
        let src = sq.star_grade(); // (l k; n m)
        let rows = x.carrier.dim(sq.n, sq.m);
        let cols = x.carrier.dim(sq.l, sq.k);
        let mut expected = vec![Mat::zeros(rows, cols); data.dim(&sq)];
        if let (Some(mats), Some(t)) = (x.blocks.get(&src), star.get(&src)) {
            for (gamma, e) in expected.iter_mut().enumerate() {
                for (beta, mb) in mats.iter().enumerate() {
                    let c = t.get(gamma, beta);
                    if !c.is_zero() {
                        *e = e.add(&mb.adjoint().scale(c, &data.field));
                    }
                }
            }
        }
        let actual = match z.get(&sq) {
            Some(m) => m.clone(),
            None => vec![Mat::zeros(rows, cols); data.dim(&sq)],
        };
        for gamma in 0..data.dim(&sq) {
            scan.check(actual[gamma] == expected[gamma], || {
                format!("block {sq}, coefficient {gamma}")
            });
        }
    }
    scan.emit(&mut rep);
    Ok(rep)
}

/// The canonical positive intertwiner between a corepresentation and its
/// bidual, normalized so that the two quantum traces agree.
#[derive(Debug, Clone)]
pub struct BidualStructure {
    /// `F_kl : V_kl → V_kl`, an isomorphism onto the bidual.
    pub f: BlockMap,
    /// The blockwise inverse `G = F⁻¹`.
    pub g: BlockMap,
    /// The common quantum dimension `d = Σ_n Tr(F_mn) = Σ_k Tr(G_kl)`.
    pub dim: Scalar,
    /// Whether every block was certified positive semidefinite.
    pub positive: bool,
}

/// The bidual corepresentation `(S² ⊗ id)(X)` on the same carrier.
pub fn bidual_corep(data: &PartialHopfData, x: &Corep) -> Result<Corep> {
    let Some(antipode) = &data.antipode else {
        return Err(Error::Precondition("bidual requires an antipode".into()));
    };
    let mut out = Corep::new(x.carrier.clone());
    for (sq, mats) in &x.blocks {
        let mid = sq.circ_bullet();
        let (Some(s1), Some(s2)) = (antipode.get(sq), antipode.get(&mid)) else {
            return Err(Error::Precondition(format!(
                "antipode matrix missing around block {sq}"
            )));
        };
        let total = s2.mul(s1, &data.field);
        let mut omats =
            vec![Mat::zeros(x.carrier.dim(sq.k, sq.l), x.carrier.dim(sq.m, sq.n)); mats.len()];
        for (gamma, om) in omats.iter_mut().enumerate() {
            for (alpha, ma) in mats.iter().enumerate() {
                let c = total.get(gamma, alpha);
                if !c.is_zero() {
                    *om = om.add(&ma.scale(c, &data.field));
                }
            }
        }
        out.set_block(data, *sq, omats);
    }
    Ok(out)
}

/// Compute the normalized `F`/`G` pair for an irreducible corepresentation.
pub fn bidual_structure(data: &PartialHopfData, x: &Corep) -> Result<BidualStructure> {
    if !is_irreducible(data, x) {
        return Err(Error::Precondition(
            "bidual structure requires an irreducible corepresentation".into(),
        ));
    }
    let b = bidual_corep(data, x)?;
    let homs = morphism_space(data, x, &b);
    if homs.len() != 1 {
        return Err(Error::Precondition(format!(
            "expected a one-dimensional space of intertwiners onto the bidual, found {}",
            homs.len()
        )));
    }
    let mut f0 = homs.into_iter().next().unwrap();

    // fix the overall sign so diagonals are positive where decidable
    let sign = f0
        .blocks
        .values()
        .flat_map(|m| (0..m.rows().min(m.cols())).map(move |i| m.get(i, i).clone()))
        .map(|c| c.sign(&data.field))
        .find(|s| matches!(s, Sign::Positive | Sign::Negative));
    if matches!(sign, Some(Sign::Negative)) {
        let minus = Scalar::one().neg();
        let blocks: Vec<((Obj, Obj), Mat)> = f0
            .blocks
            .iter()
            .map(|(&kl, m)| (kl, m.scale(&minus, &data.field)))
            .collect();
        for (kl, m) in blocks {
            f0.set(kl.0, kl.1, m);
        }
    }

    let mut g0 = BlockMap::new();
    for (&(k, l), m) in &f0.blocks {
        let inv = m.inverse(&data.field).ok_or_else(|| {
            Error::Precondition(format!("bidual intertwiner is singular at ({k},{l})"))
        })?;
        g0.set(k, l, inv);
    }

    let row_trace = |bm: &BlockMap, m: Obj| -> Scalar {
        bm.blocks
            .iter()
            .filter(|(&(k, _), _)| k == m)
            .fold(Scalar::zero(), |t, (_, mat)| t.add(&mat.trace()))
    };
    let col_trace = |bm: &BlockMap, l: Obj| -> Scalar {
        bm.blocks
            .iter()
            .filter(|(&(_, l2), _)| l2 == l)
            .fold(Scalar::zero(), |t, (_, mat)| t.add(&mat.trace()))
    };
    let &(m0, l0) = f0
        .blocks
        .keys()
        .next()
        .ok_or_else(|| Error::Precondition("empty bidual intertwiner".into()))?;
    let t_f = row_trace(&f0, m0);
    let t_g = col_trace(&g0, l0);
    let ratio = t_g.mul(
        &t_f.inv(&data.field)
            .ok_or_else(|| Error::Precondition("vanishing quantum trace".into()))?,
        &data.field,
    );
    let c = if ratio.is_one() {
        Scalar::one()
    } else {
        ratio.sqrt()?
    };
    let c_inv = c
        .inv(&data.field)
        .ok_or_else(|| Error::Precondition("vanishing normalization".into()))?;

    let mut f = BlockMap::new();
    let mut g = BlockMap::new();
    let mut positive = true;
    for (&(k, l), m) in &f0.blocks {
        let fm = m.scale(&c, &data.field);
        match psd_check(&fm, &data.field) {
            Ok(PsdOutcome::PsdExact) | Ok(PsdOutcome::PsdCertifiedNumeric) => {}
            _ => positive = false,
        }
        f.set(k, l, fm);
    }
    for (&(k, l), m) in &g0.blocks {
        g.set(k, l, m.scale(&c_inv, &data.field));
    }
    let dim = c.mul(&t_f, &data.field);
    Ok(BidualStructure {
        f,
        g,
        dim,
        positive,
    })
}

/// Verify the orthogonality relations. With one irreducible
/// corepresentation, this checks the trace formulas against `F` and `G` and
/// the coordinatewise inner products of matrix coefficients; with a second,
/// inequivalent one, it checks that all mixed inner products vanish.
pub fn schur_report(
    data: &PartialHopfData,
    x: &Corep,
    other: Option<&Corep>,
) -> Result<VerificationReport> {
    if let Some(y) = other {
        return schur_inequivalent(data, x, y);
    }
    if data.integral.is_none() {
        return Err(Error::Precondition(
            "orthogonality requires an invariant integral".into(),
        ));
    }
    let fs = bidual_structure(data, x)?;
    let z = inverse_family(data, x)?;
    let mut rep = VerificationReport::new();

    let d_inv = fs.dim.inv(&data.field).ok_or_else(|| {
        Error::Precondition("vanishing quantum dimension".into())
    })?;
    let carrier_pairs: Vec<(Obj, Obj)> = x.carrier.blocks().map(|(kl, _)| kl).collect();

    // d-independence of the two quantum traces
    let mut indep = Scan::new("corep/schur-dimension");
    let rows: BTreeSet<Obj> = carrier_pairs.iter().map(|&(k, _)| k).collect();
    let cols: BTreeSet<Obj> = carrier_pairs.iter().map(|&(_, l)| l).collect();
    for &m in &rows {
        let t = fs
            .f
            .blocks
            .iter()
            .filter(|(&(k, _), _)| k == m)
            .fold(Scalar::zero(), |t, (_, mat)| t.add(&mat.trace()));
        indep.check(t == fs.dim, || format!("row trace of F at {m}"));
    }
    for &l in &cols {
        let t = fs
            .g
            .blocks
            .iter()
            .filter(|(&(_, l2), _)| l2 == l)
            .fold(Scalar::zero(), |t, (_, mat)| t.add(&mat.trace()));
        indep.check(t == fs.dim, || format!("column trace of G at {l}"));
    }
    indep.emit(&mut rep);

    rep.record(
        "corep/schur-positivity",
        fs.positive,
        if fs.positive {
            String::new()
        } else {
            "a block of F was not certified positive semidefinite".into()
        },
    );

    // (φ ⊗ id)((X⁻¹)(l k; n m) X(k l; m n)) = d⁻¹ Tr(G_kl) id
    let mut left = Scan::new("corep/schur-trace-left");
    let mut right = Scan::new("corep/schur-trace-right");
    for &(k, l) in &carrier_pairs {
        for &(m, n) in &carrier_pairs {
            let sq = Square::new(k, l, m, n);
            let sz = sq.star_grade(); // (l k; n m)
            if data.out_of_window(&sq) || data.out_of_window(&sz) {
                left.skip();
                right.skip();
                continue;
            }
            let mx = x.mats(data, &sq);
            let mz = match z.get(&sz) {
                Some(v) => v.clone(),
                None => vec![
                    Mat::zeros(x.carrier.dim(m, n), x.carrier.dim(k, l));
                    data.dim(&sz)
                ],
            };
            let mut acc_l = Mat::zeros(x.carrier.dim(m, n), x.carrier.dim(m, n));
            let mut acc_r = Mat::zeros(x.carrier.dim(k, l), x.carrier.dim(k, l));
            for (gamma, mg) in mz.iter().enumerate() {
                for (alpha, ma) in mx.iter().enumerate() {
                    if mg.is_zero() || ma.is_zero() {
                        continue;
                    }
                    let phi_l = data.integral_value(&data.mul_basis(sz, gamma, sq, alpha));
                    if !phi_l.is_zero() {
                        acc_l = acc_l.add(&mg.mul(ma, &data.field).scale(&phi_l, &data.field));
                    }
                    let phi_r = data.integral_value(&data.mul_basis(sq, alpha, sz, gamma));
                    if !phi_r.is_zero() {
                        acc_r = acc_r.add(&ma.mul(mg, &data.field).scale(&phi_r, &data.field));
                    }
                }
            }
            let tr_g = fs
                .g
                .get(k, l)
                .map(Mat::trace)
                .unwrap_or_else(Scalar::zero);
            let expect_l = Mat::identity(x.carrier.dim(m, n))
                .scale(&d_inv.mul(&tr_g, &data.field), &data.field);
            left.check(acc_l == expect_l, || format!("block {sq}"));
            let tr_f = fs
                .f
                .get(m, n)
                .map(Mat::trace)
                .unwrap_or_else(Scalar::zero);
            let expect_r = Mat::identity(x.carrier.dim(k, l))
                .scale(&d_inv.mul(&tr_f, &data.field), &data.field);
            right.check(acc_r == expect_r, || format!("block {sq}"));
        }
    }
    left.emit(&mut rep);
    right.emit(&mut rep);

    // coordinatewise inner products of matrix coefficients
    if data.star.is_some() {
        let mut coords = Scan::new("corep/schur-coordinates");
        for &(k, l) in &carrier_pairs {
            for &(m, n) in &carrier_pairs {
                let sq = Square::new(k, l, m, n);
                if data.dim(&sq) == 0 {
                    continue;
                }
                if data.out_of_window(&sq) || data.out_of_window(&sq.star_grade()) {
                    coords.skip();
                    continue;
                }
                let dkl = x.carrier.dim(k, l);
                let dmn = x.carrier.dim(m, n);
                let g_kl = fs.g.get(k, l).cloned().unwrap_or_else(|| Mat::zeros(dkl, dkl));
                let f_mn = fs.f.get(m, n).cloned().unwrap_or_else(|| Mat::zeros(dmn, dmn));
                for i in 0..dkl {
                    for j in 0..dmn {
                        let a = x.matrix_coefficient(data, sq, i, j);
                        for p in 0..dkl {
                            for q in 0..dmn {
                                let b = x.matrix_coefficient(data, sq, p, q);
                                let bstar = data.star_apply(&b);
                                let lhs = data.integral_value(&data.mul(&bstar, &a));
                                let mut want = Scalar::zero();
                                if q == j {
                                    want = g_kl.get(i, p).mul(&d_inv, &data.field);
                                }
                                coords.check(lhs == want, || {
                                    format!("φ(b*a) at {sq}, (i,j,p,q)=({i},{j},{p},{q})")
                                });
                                let rhs = data.integral_value(&data.mul(&a, &bstar));
                                let mut want = Scalar::zero();
                                if i == p {
                                    want = f_mn.get(q, j).mul(&d_inv, &data.field);
                                }
                                coords.check(rhs == want, || {
                                    format!("φ(ab*) at {sq}, (i,j,p,q)=({i},{j},{p},{q})")
                                });
                            }
                        }
                    }
                }
            }
        }
        coords.emit(&mut rep);
    } else {
        rep.unknown("corep/schur-coordinates", "no star structure");
    }

    Ok(rep)
}

fn schur_inequivalent(
    data: &PartialHopfData,
    x: &Corep,
    y: &Corep,
) -> Result<VerificationReport> {
    if data.integral.is_none() || data.star.is_none() {
        return Err(Error::Precondition(
            "orthogonality requires an integral and a star structure".into(),
        ));
    }
    if !is_irreducible(data, x) || !is_irreducible(data, y) {
        return Err(Error::Precondition(
            "orthogonality requires irreducible corepresentations".into(),
        ));
    }
    if !morphism_space(data, x, y).is_empty() {
        return Err(Error::Precondition(
            "corepresentations are equivalent; expected an inequivalent pair".into(),
        ));
    }
    let mut rep = VerificationReport::new();
    let mut scan = Scan::new("corep/schur-inequivalent");
    let squares: BTreeSet<Square> = x
        .blocks
        .keys()
        .chain(y.blocks.keys())
        .copied()
        .collect();
    for sq in squares {
        if data.out_of_window(&sq) || data.out_of_window(&sq.star_grade()) {
            scan.skip();
            continue;
        }
        for i in 0..x.carrier.dim(sq.k, sq.l) {
            for j in 0..x.carrier.dim(sq.m, sq.n) {
                let a = x.matrix_coefficient(data, sq, i, j);
                for p in 0..y.carrier.dim(sq.k, sq.l) {
                    for q in 0..y.carrier.dim(sq.m, sq.n) {
                        let b = y.matrix_coefficient(data, sq, p, q);
                        let bstar = data.star_apply(&b);
                        scan.check(
                            data.integral_value(&data.mul(&bstar, &a)).is_zero(),
                            || format!("φ(b*a) at {sq}, ({i},{j},{p},{q})"),
                        );
                        scan.check(
                            data.integral_value(&data.mul(&a, &bstar)).is_zero(),
                            || format!("φ(ab*) at {sq}, ({i},{j},{p},{q})"),
                        );
                    }
                }
            }
        }
    }
    scan.emit(&mut rep);
    Ok(rep)
}

/// All irreducible corepresentations appearing in regular
/// corepresentations of basis elements, up to equivalence.
pub fn enumerate_irreducibles(data: &PartialHopfData) -> Result<Vec<Corep>> {
    let mut irreps: Vec<Corep> = Vec::new();
    let squares: Vec<Square> = data.squares().collect();
    for sq in squares {
        for i in 0..data.dim(&sq) {
            let x = regular_corep_from_element(data, &data.basis_elem(sq, i))?;
            for s in decompose(data, &x)? {
                let known = irreps
                    .iter()
                    .any(|w| !morphism_space(data, w, &s.corep).is_empty());
                if !known {
                    irreps.push(s.corep);
                }
            }
        }
    }
    Ok(irreps)
}

/// Global basis of the algebra, ordered blockwise.
fn global_basis(data: &PartialHopfData) -> Vec<(Square, usize)> {
    let mut out = Vec::new();
    for sq in data.squares() {
        for i in 0..data.dim(&sq) {
            out.push((sq, i));
        }
    }
    out
}

/// Columns of the Peter–Weyl map: one matrix coefficient per irreducible,
/// block and coordinate pair.
fn peter_weyl_matrix(
    data: &PartialHopfData,
    irreps: &[Corep],
) -> (Vec<(Square, usize)>, Vec<(usize, Square, usize, usize)>, Mat) {
    let basis = global_basis(data);
    let pos: BTreeMap<(Square, usize), usize> = basis
        .iter()
        .enumerate()
        .map(|(i, &b)| (b, i))
        .collect();
    let mut cols: Vec<(usize, Square, usize, usize)> = Vec::new();
    for (a, x) in irreps.iter().enumerate() {
        for sq in x.blocks.keys() {
            for i in 0..x.carrier.dim(sq.k, sq.l) {
                for j in 0..x.carrier.dim(sq.m, sq.n) {
                    cols.push((a, *sq, i, j));
                }
            }
        }
    }
    let mut p = Mat::zeros(basis.len(), cols.len());
    for (c, &(a, sq, i, j)) in cols.iter().enumerate() {
        let coeff = irreps[a].matrix_coefficient(data, sq, i, j);
        for (s2, v) in &coeff.comps {
            for (idx, val) in v.iter().enumerate() {
                if !val.is_zero() {
                    p.set(pos[&(*s2, idx)], c, val.clone());
                }
            }
        }
    }
    (basis, cols, p)
}

/// Verify that matrix coefficients of the given irreducibles form a basis
/// of the algebra.
pub fn peter_weyl_report(data: &PartialHopfData, irreps: &[Corep]) -> VerificationReport {
    let (basis, cols, p) = peter_weyl_matrix(data, irreps);
    let mut rep = VerificationReport::new();
    let square = basis.len() == cols.len();
    let rank = p.rank(&data.field);
    rep.record(
        "corep/peter-weyl",
        square && rank == basis.len(),
        format!(
            "algebra dimension {}, matrix coefficients {}, rank {rank}",
            basis.len(),
            cols.len()
        ),
    );
    rep
}

/// One irreducible with its normalized bidual intertwiner.
#[derive(Debug, Clone)]
pub struct CharacterEntry {
    pub corep: Corep,
    pub f: BlockMap,
    pub g: BlockMap,
    pub dim: Scalar,
}

/// The modular characters `f_z` at the requested integers, as linear
/// functionals on the global basis, together with the verification report
/// for their defining properties.
#[derive(Debug, Clone)]
pub struct CharacterTable {
    pub basis: Vec<(Square, usize)>,
    pub entries: Vec<CharacterEntry>,
    pub functionals: BTreeMap<i64, Vec<Scalar>>,
    pub report: VerificationReport,
    pub notes: Vec<String>,
}

fn mat_pow(data: &PartialHopfData, m: &Mat, z: i64) -> Result<Mat> {
    let base = if z < 0 {
        m.inverse(&data.field)
            .ok_or_else(|| Error::Precondition("singular block in F".into()))?
    } else {
        m.clone()
    };
    let mut out = Mat::identity(m.rows());
    for _ in 0..z.unsigned_abs() {
        out = out.mul(&base, &data.field);
    }
    Ok(out)
}

struct Characters<'a> {
    data: &'a PartialHopfData,
    basis: Vec<(Square, usize)>,
    pos: BTreeMap<(Square, usize), usize>,
    cols: Vec<(usize, Square, usize, usize)>,
    p_inv: Mat,
    entries: Vec<CharacterEntry>,
}

impl Characters<'_> {
    /// `f_z` as a vector of values on the global basis.
    fn functional(&self, z: i64) -> Result<Vec<Scalar>> {
        let data = self.data;
        let mut w = vec![Scalar::zero(); self.cols.len()];
        let mut powers: BTreeMap<(usize, Obj, Obj), Mat> = BTreeMap::new();
        for (c, &(a, sq, i, j)) in self.cols.iter().enumerate() {
            if (sq.k, sq.l) != (sq.m, sq.n) {
                continue;
            }
            let key = (a, sq.k, sq.l);
            if !powers.contains_key(&key) {
                let f_kl = self.entries[a]
                    .f
                    .get(sq.k, sq.l)
                    .cloned()
                    .unwrap_or_else(|| {
                        Mat::zeros(
                            self.entries[a].corep.carrier.dim(sq.k, sq.l),
                            self.entries[a].corep.carrier.dim(sq.k, sq.l),
                        )
                    });
                powers.insert(key, mat_pow(data, &f_kl, z)?);
            }
            w[c] = powers[&key].get(i, j).clone();
        }
        let mut f = vec![Scalar::zero(); self.basis.len()];
        for (r, fr) in f.iter_mut().enumerate() {
            for (c, wc) in w.iter().enumerate() {
                if !wc.is_zero() {
                    let coeff = self.p_inv.get(c, r);
                    if !coeff.is_zero() {
                        *fr = fr.add(&coeff.mul(wc, &data.field));
                    }
                }
            }
        }
        Ok(f)
    }

    fn eval(&self, f: &[Scalar], a: &TotalElement) -> Scalar {
        let mut out = Scalar::zero();
        for (sq, v) in &a.comps {
            for (i, c) in v.iter().enumerate() {
                if !c.is_zero() {
                    out = out.add(&c.mul(&f[self.pos[&(*sq, i)]], &self.data.field));
                }
            }
        }
        out
    }

    /// `f ∗ a = (id ⊗ f)(Δ_mn(a))` for `a` in a single block.
    fn conv_left(&self, f: &[Scalar], a: &TotalElement) -> TotalElement {
        let data = self.data;
        let mut out = TotalElement::zero();
        for (sq, v) in &a.comps {
            let rs = sq.bottom();
            let down = Square::new(rs.0, rs.1, rs.0, rs.1);
            if let Some(mats) = data.coproduct.get(&(*sq, rs)) {
                let mut coeffs = vec![Scalar::zero(); data.dim(sq)];
                for (beta, c) in v.iter().enumerate() {
                    if c.is_zero() {
                        continue;
                    }
                    for b in 0..data.dim(sq) {
                        for cc in 0..data.dim(&down) {
                            let m = mats[beta].get(b, cc);
                            if !m.is_zero() {
                                let fv = &f[self.pos[&(down, cc)]];
                                coeffs[b] = coeffs[b]
                                    .add(&c.mul(m, &data.field).mul(fv, &data.field));
                            }
                        }
                    }
                }
                out = out.add(&TotalElement::single(*sq, coeffs));
            }
        }
        out
    }

    /// `a ∗ f = (f ⊗ id)(Δ_kl(a))` for `a` in a single block.
    fn conv_right(&self, f: &[Scalar], a: &TotalElement) -> TotalElement {
        let data = self.data;
        let mut out = TotalElement::zero();
        for (sq, v) in &a.comps {
            let rs = sq.top();
            let up = Square::new(rs.0, rs.1, rs.0, rs.1);
            if let Some(mats) = data.coproduct.get(&(*sq, rs)) {
                let mut coeffs = vec![Scalar::zero(); data.dim(sq)];
                for (beta, c) in v.iter().enumerate() {
                    if c.is_zero() {
                        continue;
                    }
                    for b in 0..data.dim(&up) {
                        for cc in 0..data.dim(sq) {
                            let m = mats[beta].get(b, cc);
                            if !m.is_zero() {
                                let fv = &f[self.pos[&(up, b)]];
                                coeffs[cc] = coeffs[cc]
                                    .add(&c.mul(m, &data.field).mul(fv, &data.field));
                            }
                        }
                    }
                }
                out = out.add(&TotalElement::single(*sq, coeffs));
            }
        }
        out
    }
}

/// Build the modular characters at the requested integers and verify their
/// defining properties exactly.
pub fn woronowicz_characters(data: &PartialHopfData, zs: &[i64]) -> Result<CharacterTable> {
    let irreps = enumerate_irreducibles(data)?;
    let mut entries = Vec::with_capacity(irreps.len());
    for x in irreps {
        let bs = bidual_structure(data, &x)?;
        entries.push(CharacterEntry {
            corep: x,
            f: bs.f,
            g: bs.g,
            dim: bs.dim,
        });
    }
    let coreps: Vec<Corep> = entries.iter().map(|e| e.corep.clone()).collect();
    let mut report = peter_weyl_report(data, &coreps);
    let (basis, cols, p) = peter_weyl_matrix(data, &coreps);
    let p_inv = p.inverse(&data.field).ok_or_else(|| {
        Error::Precondition("matrix coefficients do not form a basis".into())
    })?;
    let pos: BTreeMap<(Square, usize), usize> = basis
        .iter()
        .enumerate()
        .map(|(i, &b)| (b, i))
        .collect();
    let ch = Characters {
        data,
        basis: basis.clone(),
        pos,
        cols,
        p_inv,
        entries,
    };

    let mut zset: BTreeSet<i64> = zs.iter().copied().collect();
    zset.extend([-1, 0, 1]);
    let mut fs: BTreeMap<i64, Vec<Scalar>> = BTreeMap::new();
    for &z in &zset {
        fs.insert(z, ch.functional(z)?);
    }

    // support: f_z vanishes off blocks with equal top and bottom rows
    let mut support = Scan::new("corep/characters-support");
    for (&z, f) in &fs {
        for (r, &(sq, i)) in basis.iter().enumerate() {
            if sq.top() != sq.bottom() {
                support.check(f[r].is_zero(), || {
                    format!("f_{z} on basis element {i} of {sq}")
                });
            }
        }
    }
    support.emit(&mut report);

    // f_0 = ε
    let mut counit = Scan::new("corep/characters-counit");
    let f0 = &fs[&0];
    for (r, &(sq, i)) in basis.iter().enumerate() {
        let eps = data.counit_value(&data.basis_elem(sq, i));
        counit.check(f0[r] == eps, || format!("basis element {i} of {sq}"));
    }
    counit.emit(&mut report);

    // units: f_z(1(l|n)) = δ_{l,n}
    let mut units = Scan::new("corep/characters-units");
    for (&z, f) in &fs {
        for (&(l, n), _) in &data.units {
            let v = ch.eval(f, &data.unit_elem(l, n));
            let want = if l == n { Scalar::one() } else { Scalar::zero() };
            units.check(v == want, || format!("f_{z} on 1({l}|{n})"));
        }
    }
    units.emit(&mut report);

    // convolution: (f_z ⊗ f_w) ∘ Δ = f_{z+w}
    let mut conv = Scan::new("corep/characters-convolution");
    let zlist: Vec<i64> = zset.iter().copied().collect();
    for &z in &zlist {
        for &w in &zlist {
            let fsum = match fs.get(&(z + w)) {
                Some(f) => f.clone(),
                None => ch.functional(z + w)?,
            };
            for (r, &(sq, i)) in basis.iter().enumerate() {
                let mut acc = Scalar::zero();
                for rs in data.object_pairs() {
                    if let Some(mats) = data.coproduct.get(&(sq, rs)) {
                        let up = Square::new(sq.k, sq.l, rs.0, rs.1);
                        let down = Square::new(rs.0, rs.1, sq.m, sq.n);
                        for b in 0..data.dim(&up) {
                            let fzb = &fs[&z][ch.pos[&(up, b)]];
                            if fzb.is_zero() {
                                continue;
                            }
                            for c in 0..data.dim(&down) {
                                let m = mats[i].get(b, c);
                                if m.is_zero() {
                                    continue;
                                }
                                let fwc = &fs[&w][ch.pos[&(down, c)]];
                                acc = acc.add(
                                    &m.mul(fzb, &data.field).mul(fwc, &data.field),
                                );
                            }
                        }
                    }
                }
                conv.check(acc == fsum[r], || {
                    format!("f_{z} ∗ f_{w} on basis element {i} of {sq}")
                });
            }
        }
    }
    conv.emit(&mut report);

    // multiplicativity on composable pairs
    let mut mult = Scan::new("corep/characters-multiplicative");
    for &z in &zlist {
        let f = &fs[&z];
        for &(sq, i) in &basis {
            for &(sq2, j) in &basis {
                if sq.hcomp(&sq2).is_none() {
                    continue;
                }
                let prod = data.mul_basis(sq, i, sq2, j);
                let lhs = ch.eval(f, &prod);
                let rhs = f[ch.pos[&(sq, i)]].mul(&f[ch.pos[&(sq2, j)]], &data.field);
                mult.check(lhs == rhs, || {
                    format!("f_{z} on ({sq},{i})·({sq2},{j})")
                });
            }
        }
    }
    mult.emit(&mut report);

    // modular property of the integral: φ(ab) = φ(b (f_1 ∗ a ∗ f_1))
    if data.integral.is_some() {
        let f1 = &fs[&1];
        let mut modular = Scan::new("corep/characters-modular");
        for &(sq, i) in &basis {
            let a = data.basis_elem(sq, i);
            let shifted = ch.conv_left(f1, &ch.conv_right(f1, &a));
            let sq2 = sq.star_grade();
            for j in 0..data.dim(&sq2) {
                let b = data.basis_elem(sq2, j);
                let lhs = data.integral_value(&data.mul(&a, &b));
                let rhs = data.integral_value(&data.mul(&b, &shifted));
                modular.check(lhs == rhs, || {
                    format!("a = ({sq},{i}), b = ({sq2},{j})")
                });
            }
        }
        modular.emit(&mut report);
    } else {
        report.unknown("corep/characters-modular", "no invariant integral");
    }

    // S²(a) = f_{-1} ∗ a ∗ f_1
    if data.antipode.is_some() {
        let mut s2 = Scan::new("corep/characters-antipode-squared");
        let f1 = &fs[&1];
        let fm1 = &fs[&-1];
        for &(sq, i) in &basis {
            let a = data.basis_elem(sq, i);
            let lhs = data.antipode_apply(&data.antipode_apply(&a));
            let rhs = ch.conv_left(fm1, &ch.conv_right(f1, &a));
            s2.check(lhs == rhs, || format!("basis element {i} of {sq}"));
        }
        s2.emit(&mut report);

        // f_z ∘ S = f_{-z}
        let mut anti = Scan::new("corep/characters-antipode");
        for &z in &zlist {
            let f = &fs[&z];
            let fm = match fs.get(&(-z)) {
                Some(f) => f.clone(),
                None => ch.functional(-z)?,
            };
            for (r, &(sq, i)) in basis.iter().enumerate() {
                let s = data.antipode_apply(&data.basis_elem(sq, i));
                anti.check(ch.eval(f, &s) == fm[r], || {
                    format!("f_{z} ∘ S on basis element {i} of {sq}")
                });
            }
        }
        anti.emit(&mut report);
    } else {
        report.unknown("corep/characters-antipode-squared", "no antipode");
        report.unknown("corep/characters-antipode", "no antipode");
    }

    // conj(f_z(a*)) = f_{-z}(a)
    if data.star.is_some() {
        let mut conj = Scan::new("corep/characters-conjugate");
        for &z in &zlist {
            let f = &fs[&z];
            let fm = match fs.get(&(-z)) {
                Some(f) => f.clone(),
                None => ch.functional(-z)?,
            };
            for (r, &(sq, i)) in basis.iter().enumerate() {
                let st = data.star_apply(&data.basis_elem(sq, i));
                conj.check(ch.eval(f, &st).star() == fm[r], || {
                    format!("f_{z} on the adjoint of basis element {i} of {sq}")
                });
            }
        }
        conj.emit(&mut report);
    } else {
        report.unknown("corep/characters-conjugate", "no star structure");
    }

    let functionals: BTreeMap<i64, Vec<Scalar>> = zs
        .iter()
        .map(|&z| (z, fs[&z].clone()))
        .collect();
    Ok(CharacterTable {
        basis,
        entries: ch.entries,
        functionals,
        report,
        notes: vec![
            "characters are computed and verified at integer parameters only; \
             the entire-growth condition for the full holomorphic family is \
             not machine-checked"
                .into(),
        ],
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corep::trivial_corep;
    use crate::partial_hopf::{groupoid_algebra, groupoid_union, pair_groupoid};

    fn assert_no_failures(rep: &VerificationReport) {
        let fails: Vec<String> = rep
            .failures()
            .map(|c| format!("{}: {:?}", c.axiom, c.witness))
            .collect();
        assert!(fails.is_empty(), "failed checks: {fails:?}");
    }

    #[test]
    fn trivial_corep_is_unitary() {
        for data in [
            pair_groupoid(3),
            groupoid_union(&[vec![1, 2], vec![3]]),
            groupoid_algebra(&[vec![1, 2]]),
        ] {
            let u = trivial_corep(&data);
            assert_no_failures(&verify_unitary(&data, &u).unwrap());
        }
    }

    #[test]
    fn scaled_block_breaks_unitarity() {
        let data = pair_groupoid(2);
        let mut u = trivial_corep(&data);
        let mats = u.blocks.get_mut(&Square::unit(1, 2)).unwrap();
        mats[0] = mats[0].scale(&Scalar::from_int(2), &data.field);
        let rep = verify_unitary(&data, &u).unwrap();
        assert!(rep.failures().any(|c| c.axiom == "corep/unitary"));
    }

    #[test]
    fn bidual_structure_of_the_trivial_corep_is_the_identity() {
        let data = pair_groupoid(3);
        let u = trivial_corep(&data);
        let bs = bidual_structure(&data, &u).unwrap();
        assert!(bs.positive);
        assert_eq!(bs.dim, Scalar::one());
        for ((k, l), _) in u.carrier.blocks() {
            assert_eq!(bs.f.get(k, l), Some(&Mat::identity(1)));
            assert_eq!(bs.g.get(k, l), Some(&Mat::identity(1)));
        }
    }

    #[test]
    fn schur_orthogonality_for_single_irreducibles() {
        let data = pair_groupoid(3);
        let u = trivial_corep(&data);
        assert_no_failures(&schur_report(&data, &u, None).unwrap());

        let data = groupoid_algebra(&[vec![1, 2]]);
        let x = regular_corep_from_element(
            &data,
            &data.basis_elem(Square::new(1, 2, 1, 2), 0),
        )
        .unwrap();
        assert_no_failures(&schur_report(&data, &x, None).unwrap());
    }

    #[test]
    fn schur_orthogonality_for_an_inequivalent_pair() {
        let data = groupoid_algebra(&[vec![1, 2]]);
        let x = regular_corep_from_element(
            &data,
            &data.basis_elem(Square::new(1, 2, 1, 2), 0),
        )
        .unwrap();
        let y = regular_corep_from_element(
            &data,
            &data.basis_elem(Square::new(2, 2, 2, 2), 0),
        )
        .unwrap();
        assert_no_failures(&schur_report(&data, &x, Some(&y)).unwrap());
        // an equivalent pair is rejected
        assert!(schur_report(&data, &x, Some(&x)).is_err());
    }

    #[test]
    fn reducible_input_is_rejected() {
        let data = groupoid_union(&[vec![1, 2], vec![3]]);
        let u = trivial_corep(&data);
        assert!(schur_report(&data, &u, None).is_err());
        assert!(bidual_structure(&data, &u).is_err());
    }

    #[test]
    fn irreducible_enumeration_matches_the_algebra_dimension() {
        let data = pair_groupoid(2);
        let irreps = enumerate_irreducibles(&data).unwrap();
        assert_eq!(irreps.len(), 1);
        assert_no_failures(&peter_weyl_report(&data, &irreps));

        let data = groupoid_algebra(&[vec![1, 2]]);
        let irreps = enumerate_irreducibles(&data).unwrap();
        assert_eq!(irreps.len(), 4);
        assert_no_failures(&peter_weyl_report(&data, &irreps));

        let data = groupoid_union(&[vec![1, 2], vec![3]]);
        let irreps = enumerate_irreducibles(&data).unwrap();
        assert_eq!(irreps.len(), 2);
        assert_no_failures(&peter_weyl_report(&data, &irreps));
    }

    #[test]
    fn missing_irreducibles_fail_peter_weyl() {
        let data = groupoid_algebra(&[vec![1, 2]]);
        let mut irreps = enumerate_irreducibles(&data).unwrap();
        irreps.pop();
        let rep = peter_weyl_report(&data, &irreps);
        assert!(rep.failures().any(|c| c.axiom == "corep/peter-weyl"));
    }

    #[test]
    fn characters_of_the_pair_groupoid_restrict_to_the_diagonal() {
        let data = pair_groupoid(3);
        let table = woronowicz_characters(&data, &[-2, -1, 0, 1, 2]).unwrap();
        assert_no_failures(&table.report);
        assert_eq!(table.entries.len(), 1);
        for (_, f) in &table.functionals {
            for (r, &(sq, _)) in table.basis.iter().enumerate() {
                let want = if sq.k == sq.m { Scalar::one() } else { Scalar::zero() };
                assert_eq!(f[r], want, "f on {sq}");
            }
        }
    }

    #[test]
    fn characters_of_the_matrix_algebra_are_counit_like() {
        let data = groupoid_algebra(&[vec![1, 2]]);
        let table = woronowicz_characters(&data, &[0, 1, 3]).unwrap();
        assert_no_failures(&table.report);
        assert_eq!(table.entries.len(), 4);
        for e in &table.entries {
            assert_eq!(e.dim, Scalar::one());
        }
        for (_, f) in &table.functionals {
            for v in f {
                assert_eq!(*v, Scalar::one());
            }
        }
        assert!(table.notes.iter().any(|n| n.contains("not machine-checked")));
    }
}
