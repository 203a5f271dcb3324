//! The axiom verifiers. Each returns a [`VerificationReport`] with one pass
//! entry per axiom (or one fail entry per failing instance) and never
//! panics on mathematically wrong data.

use super::{PartialHopfData, TensorElement, TotalElement};
use crate::grading::{Obj, Square};
use crate::linalg::{psd_check, Mat, PsdOutcome};
use crate::report::VerificationReport;
use crate::scalar::Scalar;
use crate::{Error, Result};
use std::collections::{BTreeMap, BTreeSet};

/// Aggregates instance outcomes under a single axiom id.
pub(crate) struct Scan {
    axiom: &'static str,
    failures: Vec<String>,
    skipped: usize,
}

impl Scan {
    pub(crate) fn new(axiom: &'static str) -> Self {
        Scan {
            axiom,
            failures: Vec::new(),
            skipped: 0,
        }
    }

    pub(crate) fn skip(&mut self) {
        self.skipped += 1;
    }

    pub(crate) fn check(&mut self, ok: bool, witness: impl FnOnce() -> String) {
        if !ok {
            self.failures.push(witness());
        }
    }

    pub(crate) fn emit(self, rep: &mut VerificationReport) {
        if self.failures.is_empty() {
            rep.pass(self.axiom);
        } else {
            for w in self.failures {
                rep.fail(self.axiom, w);
            }
        }
        if self.skipped > 0 {
            rep.skip_boundary(
                self.axiom,
                format!("{} instance(s) outside the truncation window", self.skipped),
            );
        }
    }
}

/// Associativity on all composable basis triples and the unit laws
/// `1(k|m)·a = a = a·1(l|n)` on every block.
pub fn verify_partial_algebra(data: &PartialHopfData) -> VerificationReport {
    let mut rep = VerificationReport::new();

    let mut assoc = Scan::new("algebra/associativity");
    let squares: Vec<Square> = data.squares().collect();
    for &k in &squares {
        for &l in &squares {
            let Some(kl) = k.hcomp(&l) else { continue };
            for &m in &squares {
                let Some(lm) = l.hcomp(&m) else { continue };
                let klm = kl.hcomp(&m).unwrap();
                if [k, l, m, kl, lm, klm].iter().any(|s| data.out_of_window(s)) {
                    assoc.skip();
                    continue;
                }
                for i in 0..data.dim(&k) {
                    for j in 0..data.dim(&l) {
                        let ab = data.mul_basis(k, i, l, j);
                        for x in 0..data.dim(&m) {
                            let lhs = data.mul(&ab, &data.basis_elem(m, x));
                            let bc = data.mul_basis(l, j, m, x);
                            let rhs = data.mul(&data.basis_elem(k, i), &bc);
                            assoc.check(lhs == rhs, || {
                                format!("K={k} i={i}, L={l} j={j}, M={m} x={x}")
                            });
                        }
                    }
                }
            }
        }
    }
    assoc.emit(&mut rep);

    let mut unit_l = Scan::new("algebra/unit-left");
    let mut unit_r = Scan::new("algebra/unit-right");
    for &k in &squares {
        if data.out_of_window(&k) {
            unit_l.skip();
            unit_r.skip();
            continue;
        }
        for i in 0..data.dim(&k) {
            let e = data.basis_elem(k, i);
            let lhs = data.mul(&data.unit_elem(k.k, k.m), &e);
            unit_l.check(lhs == e, || format!("K={k} i={i}"));
            let rhs = data.mul(&e, &data.unit_elem(k.l, k.n));
            unit_r.check(rhs == e, || format!("K={k} i={i}"));
        }
    }
    unit_l.emit(&mut rep);
    unit_r.emit(&mut rep);

    rep
}

/// The partial coalgebra axioms (coassociativity, counitality) and the five
/// bialgebra compatibility properties: comultiplication of units, counit of
/// multiplication, non-degeneracy, finiteness, and multiplicativity of the
/// comultiplication.
pub fn verify_partial_bialgebra(data: &PartialHopfData) -> VerificationReport {
    let mut rep = VerificationReport::new();
    let squares: Vec<Square> = data.squares().collect();
    let pairs = data.object_pairs();

    // Coassociativity: (Δ_tu ⊗ id)Δ_rs = (id ⊗ Δ_rs)Δ_tu on every block.
    let mut coassoc = Scan::new("coalgebra/coassociativity");
    for &k in &squares {
        if data.out_of_window(&k) {
            coassoc.skip();
            continue;
        }
        for &rs in &pairs {
            let up = Square::new(k.k, k.l, rs.0, rs.1);
            let down = Square::new(rs.0, rs.1, k.m, k.n);
            for &tu in &pairs {
                let up2 = Square::new(k.k, k.l, tu.0, tu.1);
                let mid = Square::new(tu.0, tu.1, rs.0, rs.1);
                let down2 = Square::new(tu.0, tu.1, k.m, k.n);
                let c_rs = data.coproduct.get(&(k, rs));
                let c_tu = data.coproduct.get(&(k, tu));
                let c_up = data.coproduct.get(&(up, tu));
                let c_down = data.coproduct.get(&(down2, rs));
                if c_rs.is_none() && c_tu.is_none() {
                    continue;
                }
                let (dp, dq, dg) = (data.dim(&up2), data.dim(&mid), data.dim(&down));
                for alpha in 0..data.dim(&k) {
                    let mut ok = true;
                    let mut witness = (0, 0, 0);
                    'outer: for p in 0..dp {
                        for q in 0..dq {
                            for g in 0..dg {
                                let mut lhs = Scalar::zero();
                                if let (Some(crs), Some(cup)) = (c_rs, c_up) {
                                    for b in 0..data.dim(&up) {
                                        let t = crs[alpha]
                                            .get(b, g)
                                            .mul(cup[b].get(p, q), &data.field);
                                        lhs = lhs.add(&t);
                                    }
                                }
                                let mut rhs = Scalar::zero();
                                if let (Some(ctu), Some(cdn)) = (c_tu, c_down) {
                                    for x in 0..data.dim(&down2) {
                                        let t = ctu[alpha]
                                            .get(p, x)
                                            .mul(cdn[x].get(q, g), &data.field);
                                        rhs = rhs.add(&t);
                                    }
                                }
                                if lhs != rhs {
                                    ok = false;
                                    witness = (p, q, g);
                                    break 'outer;
                                }
                            }
                        }
                    }
                    coassoc.check(ok, || {
                        format!(
                            "K={k} α={alpha} rows ({},{})/({},{}) at {:?}",
                            tu.0, tu.1, rs.0, rs.1, witness
                        )
                    });
                }
            }
        }
    }
    coassoc.emit(&mut rep);

    // Counitality: (ε ⊗ id)Δ_{kl}(a) = a = (id ⊗ ε)Δ_{mn}(a).
    let mut cu_l = Scan::new("coalgebra/counit-left");
    let mut cu_r = Scan::new("coalgebra/counit-right");
    for &k in &squares {
        if data.out_of_window(&k) {
            cu_l.skip();
            cu_r.skip();
            continue;
        }
        for alpha in 0..data.dim(&k) {
            let e = data.basis_elem(k, alpha);
            let lhs = counit_left_leg(data, &data.delta_rs_basis(k, alpha, (k.k, k.l)));
            cu_l.check(lhs == e, || format!("K={k} α={alpha}"));
            let rhs = counit_right_leg(data, &data.delta_rs_basis(k, alpha, (k.m, k.n)));
            cu_r.check(rhs == e, || format!("K={k} α={alpha}"));
        }
    }
    cu_l.emit(&mut rep);
    cu_r.emit(&mut rep);

    // Property (1): Δ_{l,l'}(1(k|m)) = δ_{l,l'} 1(k|l) ⊗ 1(l|m).
    let mut du = Scan::new("bialgebra/unit-comultiplication");
    for &k in &data.objects {
        for &m in &data.objects {
            let u = data.unit_elem(k, m);
            for &(l, lp) in &pairs {
                if [k, m, l, lp].iter().any(|o| data.boundary.contains(o)) {
                    du.skip();
                    continue;
                }
                let lhs = data.delta_rs(&u, (l, lp));
                let expected = if l == lp {
                    TensorElement::pure(data, &data.unit_elem(k, l), &data.unit_elem(l, m))
                } else {
                    TensorElement::zero()
                };
                du.check(lhs == expected, || format!("1({k}|{m}) rows ({l},{lp})"));
            }
        }
    }
    du.emit(&mut rep);

    // Property (2): ε(ab) = ε(a)ε(b) on all composable pairs.
    let mut cm = Scan::new("bialgebra/counit-multiplicativity");
    for &k in &squares {
        for &l in &squares {
            let Some(kl) = k.hcomp(&l) else { continue };
            if [k, l, kl].iter().any(|s| data.out_of_window(s)) {
                cm.skip();
                continue;
            }
            for i in 0..data.dim(&k) {
                let ea = data.counit_value(&data.basis_elem(k, i));
                for j in 0..data.dim(&l) {
                    let lhs = data.counit_value(&data.mul_basis(k, i, l, j));
                    let rhs = ea.mul(&data.counit_value(&data.basis_elem(l, j)), &data.field);
                    cm.check(lhs == rhs, || format!("K={k} i={i}, L={l} j={j}"));
                }
            }
        }
    }
    cm.emit(&mut rep);

    // Property (3): ε(1(k|k)) = 1.
    let mut nd = Scan::new("bialgebra/counit-nondegeneracy");
    for &k in &data.objects {
        if data.boundary.contains(&k) {
            nd.skip();
            continue;
        }
        let v = data.counit_value(&data.unit_elem(k, k));
        nd.check(v.is_one(), || format!("ε(1({k}|{k})) ≠ 1"));
    }
    nd.emit(&mut rep);

    // Property (4): finite support of (r,s) ↦ Δ_rs(a), plus structural
    // consistency of the stored coproduct tables.
    let mut rcf = Scan::new("bialgebra/rcf");
    for ((k, rs), mats) in &data.coproduct {
        let up = Square::new(k.k, k.l, rs.0, rs.1);
        let down = Square::new(rs.0, rs.1, k.m, k.n);
        let shape_ok = mats.len() == data.dim(k)
            && mats
                .iter()
                .all(|m| (m.rows(), m.cols()) == (data.dim(&up), data.dim(&down)));
        rcf.check(shape_ok, || format!("K={k} rows ({},{})", rs.0, rs.1));
    }
    rcf.emit(&mut rep);

    // Property (5): Δ(ab) = Δ(a)Δ(b) on all composable basis pairs.
    let mut dm = Scan::new("bialgebra/comultiplication-multiplicativity");
    for &k in &squares {
        for &l in &squares {
            let Some(kl) = k.hcomp(&l) else { continue };
            if [k, l, kl].iter().any(|s| data.out_of_window(s)) {
                dm.skip();
                continue;
            }
            for i in 0..data.dim(&k) {
                let da = data.delta(&data.basis_elem(k, i));
                for j in 0..data.dim(&l) {
                    let lhs = data.delta(&data.mul_basis(k, i, l, j));
                    let rhs = da.mul(&data.delta(&data.basis_elem(l, j)), data);
                    dm.check(lhs == rhs, || format!("K={k} i={i}, L={l} j={j}"));
                }
            }
        }
    }
    dm.emit(&mut rep);

    rep
}

fn counit_left_leg(data: &PartialHopfData, t: &TensorElement) -> TotalElement {
    let mut out = TotalElement::zero();
    for ((u, d), m) in &t.comps {
        let Some(eps) = data.counit.get(u) else { continue };
        let mut v = vec![Scalar::zero(); data.dim(d)];
        for (i, e) in eps.iter().enumerate() {
            if e.is_zero() {
                continue;
            }
            for (g, vg) in v.iter_mut().enumerate() {
                *vg = vg.add(&e.mul(m.get(i, g), &data.field));
            }
        }
        out = out.add(&TotalElement::single(*d, v));
    }
    out
}

fn counit_right_leg(data: &PartialHopfData, t: &TensorElement) -> TotalElement {
    let mut out = TotalElement::zero();
    for ((u, d), m) in &t.comps {
        let Some(eps) = data.counit.get(d) else { continue };
        let mut v = vec![Scalar::zero(); data.dim(u)];
        for (g, e) in eps.iter().enumerate() {
            if e.is_zero() {
                continue;
            }
            for (i, vi) in v.iter_mut().enumerate() {
                *vi = vi.add(&m.get(i, g).mul(e, &data.field));
            }
        }
        out = out.add(&TotalElement::single(*u, v));
    }
    out
}

/// `m((id ⊗ S)Δ(a))`, i.e. `a₍₁₎S(a₍₂₎)`, as a total element.
fn contract_id_s(data: &PartialHopfData, t: &TensorElement) -> TotalElement {
    let mut out = TotalElement::zero();
    for ((u, d), m) in &t.comps {
        for i in 0..m.rows() {
            for j in 0..m.cols() {
                let c = m.get(i, j);
                if c.is_zero() {
                    continue;
                }
                let sb = data.antipode_apply(&data.basis_elem(*d, j));
                let p = data.mul(&data.basis_elem(*u, i), &sb);
                out = out.add(&p.scale(c, &data.field));
            }
        }
    }
    out
}

/// `m((S ⊗ id)Δ(a))`, i.e. `S(a₍₁₎)a₍₂₎`, as a total element.
fn contract_s_id(data: &PartialHopfData, t: &TensorElement) -> TotalElement {
    let mut out = TotalElement::zero();
    for ((u, d), m) in &t.comps {
        for i in 0..m.rows() {
            for j in 0..m.cols() {
                let c = m.get(i, j);
                if c.is_zero() {
                    continue;
                }
                let sa = data.antipode_apply(&data.basis_elem(*u, i));
                let p = data.mul(&sa, &data.basis_elem(*d, j));
                out = out.add(&p.scale(c, &data.field));
            }
        }
    }
    out
}

/// Antipode axioms: definedness and grading, both defining projections
/// `a₍₁₎S(a₍₂₎) = ε(a)λ_k` and `S(a₍₁₎)a₍₂₎ = ε(a)ρ_n`, unit values,
/// anti-multiplicativity, anti-comultiplicativity, and `ε∘S = ε`.
pub fn verify_antipode(data: &PartialHopfData) -> VerificationReport {
    let mut rep = VerificationReport::new();
    let squares: Vec<Square> = data.squares().collect();

    let mut defined = Scan::new("antipode/defined");
    match &data.antipode {
        None => defined.check(false, || "no antipode data".into()),
        Some(s) => {
            for &k in &squares {
                if data.out_of_window(&k) {
                    defined.skip();
                    continue;
                }
                defined.check(s.contains_key(&k), || format!("no antipode on K={k}"));
            }
        }
    }
    defined.emit(&mut rep);

    let mut pi_l = Scan::new("antipode/pi-left");
    let mut pi_r = Scan::new("antipode/pi-right");
    for &k in &squares {
        if data.out_of_window(&k) {
            pi_l.skip();
            pi_r.skip();
            continue;
        }
        for alpha in 0..data.dim(&k) {
            let e = data.basis_elem(k, alpha);
            let eps = data.counit_value(&e);
            let t = data.delta(&e);
            let lhs_l = contract_id_s(data, &t);
            let expect_l = data.lambda_elem(k.k).scale(&eps, &data.field);
            pi_l.check(lhs_l == expect_l, || format!("K={k} α={alpha}"));
            let lhs_r = contract_s_id(data, &t);
            let expect_r = data.rho_elem(k.n).scale(&eps, &data.field);
            pi_r.check(lhs_r == expect_r, || format!("K={k} α={alpha}"));
        }
    }
    pi_l.emit(&mut rep);
    pi_r.emit(&mut rep);

    let mut units = Scan::new("antipode/units");
    for &k in &data.objects {
        for &l in &data.objects {
            if data.boundary.contains(&k) || data.boundary.contains(&l) {
                units.skip();
                continue;
            }
            let lhs = data.antipode_apply(&data.unit_elem(k, l));
            units.check(lhs == data.unit_elem(l, k), || format!("S(1({k}|{l}))"));
        }
    }
    units.emit(&mut rep);

    let mut am = Scan::new("antipode/antimultiplicative");
    for &k in &squares {
        for &l in &squares {
            let Some(kl) = k.hcomp(&l) else { continue };
            if [k, l, kl].iter().any(|s| data.out_of_window(s)) {
                am.skip();
                continue;
            }
            for i in 0..data.dim(&k) {
                let sa = data.antipode_apply(&data.basis_elem(k, i));
                for j in 0..data.dim(&l) {
                    let lhs = data.antipode_apply(&data.mul_basis(k, i, l, j));
                    let sb = data.antipode_apply(&data.basis_elem(l, j));
                    am.check(lhs == data.mul(&sb, &sa), || {
                        format!("K={k} i={i}, L={l} j={j}")
                    });
                }
            }
        }
    }
    am.emit(&mut rep);

    let mut ac = Scan::new("antipode/anticomultiplicative");
    for &k in &squares {
        if data.out_of_window(&k) {
            ac.skip();
            continue;
        }
        for alpha in 0..data.dim(&k) {
            let e = data.basis_elem(k, alpha);
            let lhs = data.delta(&data.antipode_apply(&e));
            let rhs = data
                .delta(&e)
                .swap()
                .map_left(data, |q, y| data.antipode_apply(&data.basis_elem(q, y)))
                .map_right(data, |q, y| data.antipode_apply(&data.basis_elem(q, y)));
            ac.check(lhs == rhs, || format!("K={k} α={alpha}"));
        }
    }
    ac.emit(&mut rep);

    let mut ce = Scan::new("antipode/counit");
    for &k in &squares {
        if data.out_of_window(&k) {
            ce.skip();
            continue;
        }
        for alpha in 0..data.dim(&k) {
            let e = data.basis_elem(k, alpha);
            let lhs = data.counit_value(&data.antipode_apply(&e));
            ce.check(lhs == data.counit_value(&e), || format!("K={k} α={alpha}"));
        }
    }
    ce.emit(&mut rep);

    rep
}

fn t1_pure(data: &PartialHopfData, k: Square, i: usize, l: Square, j: usize) -> TensorElement {
    let b = data.basis_elem(l, j);
    data.delta(&data.basis_elem(k, i))
        .map_right(data, |q, y| data.mul(&data.basis_elem(q, y), &b))
}

fn r1_pure(data: &PartialHopfData, k: Square, i: usize, l: Square, j: usize) -> TensorElement {
    let b = data.basis_elem(l, j);
    data.delta(&data.basis_elem(k, i)).map_right(data, |q, y| {
        data.mul(&data.antipode_apply(&data.basis_elem(q, y)), &b)
    })
}

fn t2_pure(data: &PartialHopfData, k: Square, i: usize, l: Square, j: usize) -> TensorElement {
    let a = data.basis_elem(k, i);
    data.delta(&data.basis_elem(l, j))
        .map_left(data, |q, y| data.mul(&a, &data.basis_elem(q, y)))
}

fn r2_pure(data: &PartialHopfData, k: Square, i: usize, l: Square, j: usize) -> TensorElement {
    let a = data.basis_elem(k, i);
    data.delta(&data.basis_elem(l, j)).map_left(data, |q, y| {
        data.mul(&a, &data.antipode_apply(&data.basis_elem(q, y)))
    })
}

/// The Galois-map identities `T_iR_i = E_i`, `R_iT_i = G_i`,
/// `T_iR_iT_i = T_i` and `R_iT_iR_i = R_i` for `i = 1, 2`, checked on all
/// basis pure tensors.
pub fn verify_canonical_maps(data: &PartialHopfData) -> VerificationReport {
    let mut rep = VerificationReport::new();
    let squares: Vec<Square> = data.squares().collect();

    let mut scans: BTreeMap<&'static str, Scan> = [
        "canonical/t1r1-e1",
        "canonical/r1t1-g1",
        "canonical/t1r1t1",
        "canonical/r1t1r1",
        "canonical/t2r2-e2",
        "canonical/r2t2-g2",
        "canonical/t2r2t2",
        "canonical/r2t2r2",
    ]
    .into_iter()
    .map(|a| (a, Scan::new(a)))
    .collect();

    for &k in &squares {
        for &l in &squares {
            if data.out_of_window(&k) || data.out_of_window(&l) {
                for s in scans.values_mut() {
                    s.skip();
                }
                continue;
            }
            for i in 0..data.dim(&k) {
                for j in 0..data.dim(&l) {
                    let mut x = TensorElement::zero();
                    let mut unit = Mat::zeros(data.dim(&k), data.dim(&l));
                    unit.set(i, j, Scalar::one());
                    x.add_mat(k, l, unit);
                    let witness = || format!("K={k} i={i}, L={l} j={j}");

                    let t1x = t1_pure(data, k, i, l, j);
                    let r1x = r1_pure(data, k, i, l, j);
                    let t1r1 = r1x.apply(data, |a, p, b, q| t1_pure(data, a, p, b, q));
                    let e1x = x.filter(|a, b| a.m == b.k);
                    scans.get_mut("canonical/t1r1-e1").unwrap().check(t1r1 == e1x, witness);
                    let r1t1 = t1x.apply(data, |a, p, b, q| r1_pure(data, a, p, b, q));
                    let g1x = x.filter(|a, b| a.n == b.m);
                    scans.get_mut("canonical/r1t1-g1").unwrap().check(r1t1 == g1x, witness);
                    let t1r1t1 = r1t1.apply(data, |a, p, b, q| t1_pure(data, a, p, b, q));
                    scans.get_mut("canonical/t1r1t1").unwrap().check(t1r1t1 == t1x, witness);
                    let r1t1r1 = t1r1.apply(data, |a, p, b, q| r1_pure(data, a, p, b, q));
                    scans.get_mut("canonical/r1t1r1").unwrap().check(r1t1r1 == r1x, witness);

                    let t2x = t2_pure(data, k, i, l, j);
                    let r2x = r2_pure(data, k, i, l, j);
                    let t2r2 = r2x.apply(data, |a, p, b, q| t2_pure(data, a, p, b, q));
                    let e2x = x.filter(|a, b| a.n == b.l);
                    scans.get_mut("canonical/t2r2-e2").unwrap().check(t2r2 == e2x, witness);
                    let r2t2 = t2x.apply(data, |a, p, b, q| r2_pure(data, a, p, b, q));
                    let g2x = x.filter(|a, b| a.l == b.k);
                    scans.get_mut("canonical/r2t2-g2").unwrap().check(r2t2 == g2x, witness);
                    let t2r2t2 = r2t2.apply(data, |a, p, b, q| t2_pure(data, a, p, b, q));
                    scans.get_mut("canonical/t2r2t2").unwrap().check(t2r2t2 == t2x, witness);
                    let r2t2r2 = t2r2.apply(data, |a, p, b, q| r2_pure(data, a, p, b, q));
                    scans.get_mut("canonical/r2t2r2").unwrap().check(r2t2r2 == r2x, witness);
                }
            }
        }
    }
    for (_, s) in scans {
        s.emit(&mut rep);
    }
    rep
}

/// Integral axioms: normalization, unit values, left and right invariance,
/// invariance under the antipode, faithfulness of the pairing
/// `(a, b) ↦ φ(ab)`, and positivity of the blockwise Gram matrices.
pub fn verify_integral(data: &PartialHopfData) -> VerificationReport {
    let mut rep = VerificationReport::new();
    if data.integral.is_none() {
        rep.fail("integral/present", "no integral data");
        return rep;
    }
    let squares: Vec<Square> = data.squares().collect();

    let mut norm = Scan::new("integral/normalization");
    for &k in &data.objects {
        if data.boundary.contains(&k) {
            norm.skip();
            continue;
        }
        let v = data.integral_value(&data.unit_elem(k, k));
        norm.check(v.is_one(), || format!("φ(1({k}|{k})) ≠ 1"));
    }
    norm.emit(&mut rep);

    let mut uv = Scan::new("integral/unit-values");
    for (&(k, m), _) in &data.units {
        if data.boundary.contains(&k) || data.boundary.contains(&m) {
            uv.skip();
            continue;
        }
        let v = data.integral_value(&data.unit_elem(k, m));
        uv.check(v.is_one(), || format!("φ(1({k}|{m})) ≠ 1"));
    }
    uv.emit(&mut rep);

    let mut li = Scan::new("integral/left-invariance");
    for &k in &squares {
        if k.m != k.n {
            continue;
        }
        if data.out_of_window(&k) {
            li.skip();
            continue;
        }
        for alpha in 0..data.dim(&k) {
            let e = data.basis_elem(k, alpha);
            let phi = data.integral_value(&e);
            for &l in &data.objects {
                let lhs = phi_right_leg(data, &data.delta_rs(&e, (l, l)));
                let expected = if k.k == k.l {
                    data.unit_elem(k.k, l).scale(&phi, &data.field)
                } else {
                    TotalElement::zero()
                };
                li.check(lhs == expected, || format!("K={k} α={alpha} l={l}"));
            }
        }
    }
    li.emit(&mut rep);

    let mut ri = Scan::new("integral/right-invariance");
    for &k in &squares {
        if k.k != k.l {
            continue;
        }
        if data.out_of_window(&k) {
            ri.skip();
            continue;
        }
        for alpha in 0..data.dim(&k) {
            let e = data.basis_elem(k, alpha);
            let phi = data.integral_value(&e);
            for &l in &data.objects {
                let lhs = phi_left_leg(data, &data.delta_rs(&e, (l, l)));
                let expected = if k.m == k.n {
                    data.unit_elem(l, k.m).scale(&phi, &data.field)
                } else {
                    TotalElement::zero()
                };
                ri.check(lhs == expected, || format!("K={k} α={alpha} l={l}"));
            }
        }
    }
    ri.emit(&mut rep);

    let mut ai = Scan::new("integral/antipode-invariance");
    if data.antipode.is_some() {
        for &k in &squares {
            if data.out_of_window(&k) {
                ai.skip();
                continue;
            }
            for alpha in 0..data.dim(&k) {
                let e = data.basis_elem(k, alpha);
                let lhs = data.integral_value(&data.antipode_apply(&e));
                ai.check(lhs == data.integral_value(&e), || format!("K={k} α={alpha}"));
            }
        }
        ai.emit(&mut rep);
    } else {
        rep.unknown("integral/antipode-invariance", "no antipode data");
    }

    // Faithfulness: the pairing (a, b) ↦ φ(ab) over the total basis has
    // full rank. Not meaningful on truncated data.
    if data.boundary.is_empty() && data.truncated_blocks.is_empty() {
        let basis: Vec<(Square, usize)> = squares
            .iter()
            .flat_map(|&k| (0..data.dim(&k)).map(move |i| (k, i)))
            .collect();
        let n = basis.len();
        let pairing = Mat::from_fn(n, n, |i, j| {
            let (ka, a) = basis[i];
            let (kb, b) = basis[j];
            data.integral_value(&data.mul_basis(ka, a, kb, b))
        });
        let rank = pairing.rank(&data.field);
        rep.record(
            "integral/faithfulness",
            rank == n,
            format!("pairing rank {rank} < total dimension {n}"),
        );
    } else {
        rep.skip_boundary("integral/faithfulness", "truncated data");
    }

    // Positivity: blockwise Gram matrices φ(b_i* b_j) are PSD.
    if data.star.is_some() {
        let mut pos = Scan::new("integral/positivity");
        let mut unknowns = Vec::new();
        for &k in &squares {
            if data.out_of_window(&k) {
                pos.skip();
                continue;
            }
            let d = data.dim(&k);
            let gram = Mat::from_fn(d, d, |i, j| {
                let bi = data.star_apply(&data.basis_elem(k, i));
                data.integral_value(&data.mul(&bi, &data.basis_elem(k, j)))
            });
            match psd_check(&gram, &data.field) {
                Ok(PsdOutcome::PsdExact) | Ok(PsdOutcome::PsdCertifiedNumeric) => {}
                Ok(PsdOutcome::NotPsd { pivot }) => {
                    pos.check(false, || format!("K={k}: not PSD at pivot {pivot}"))
                }
                Ok(PsdOutcome::Unknown { pivot }) => {
                    unknowns.push(format!("K={k}: pivot {pivot} sign not certified"))
                }
                Err(e) => pos.check(false, || format!("K={k}: {e}")),
            }
        }
        pos.emit(&mut rep);
        for u in unknowns {
            rep.unknown("integral/positivity", u);
        }
    } else {
        rep.unknown("integral/positivity", "no star data");
    }

    rep
}

fn phi_right_leg(data: &PartialHopfData, t: &TensorElement) -> TotalElement {
    let mut out = TotalElement::zero();
    for ((u, d), m) in &t.comps {
        let mut v = vec![Scalar::zero(); data.dim(u)];
        for g in 0..data.dim(d) {
            let phi = data.integral_value(&data.basis_elem(*d, g));
            if phi.is_zero() {
                continue;
            }
            for (i, vi) in v.iter_mut().enumerate() {
                *vi = vi.add(&m.get(i, g).mul(&phi, &data.field));
            }
        }
        out = out.add(&TotalElement::single(*u, v));
    }
    out
}

fn phi_left_leg(data: &PartialHopfData, t: &TensorElement) -> TotalElement {
    let mut out = TotalElement::zero();
    for ((u, d), m) in &t.comps {
        let mut v = vec![Scalar::zero(); data.dim(d)];
        for i in 0..data.dim(u) {
            let phi = data.integral_value(&data.basis_elem(*u, i));
            if phi.is_zero() {
                continue;
            }
            for (g, vg) in v.iter_mut().enumerate() {
                *vg = vg.add(&phi.mul(m.get(i, g), &data.field));
            }
        }
        out = out.add(&TotalElement::single(*d, v));
    }
    out
}

/// Star axioms: involutivity, anti-multiplicativity, selfadjoint units,
/// coproduct compatibility `Δ_rs(a)* = Δ_sr(a*)`, and `S(S(a)*)* = a`.
pub fn verify_star(data: &PartialHopfData) -> VerificationReport {
    let mut rep = VerificationReport::new();
    if data.star.is_none() {
        rep.fail("star/present", "no star data");
        return rep;
    }
    let squares: Vec<Square> = data.squares().collect();
    let pairs = data.object_pairs();

    let mut inv = Scan::new("star/involution");
    for &k in &squares {
        if data.out_of_window(&k) {
            inv.skip();
            continue;
        }
        for i in 0..data.dim(&k) {
            let e = data.basis_elem(k, i);
            inv.check(data.star_apply(&data.star_apply(&e)) == e, || {
                format!("K={k} i={i}")
            });
        }
    }
    inv.emit(&mut rep);

    let mut am = Scan::new("star/antimultiplicative");
    for &k in &squares {
        for &l in &squares {
            let Some(kl) = k.hcomp(&l) else { continue };
            if [k, l, kl].iter().any(|s| data.out_of_window(s)) {
                am.skip();
                continue;
            }
            for i in 0..data.dim(&k) {
                let sa = data.star_apply(&data.basis_elem(k, i));
                for j in 0..data.dim(&l) {
                    let lhs = data.star_apply(&data.mul_basis(k, i, l, j));
                    let sb = data.star_apply(&data.basis_elem(l, j));
                    am.check(lhs == data.mul(&sb, &sa), || {
                        format!("K={k} i={i}, L={l} j={j}")
                    });
                }
            }
        }
    }
    am.emit(&mut rep);

    let mut su = Scan::new("star/units-selfadjoint");
    for (&(k, m), _) in &data.units {
        if data.boundary.contains(&k) || data.boundary.contains(&m) {
            su.skip();
            continue;
        }
        let u = data.unit_elem(k, m);
        su.check(data.star_apply(&u) == u, || format!("1({k}|{m})"));
    }
    su.emit(&mut rep);

    let mut sc = Scan::new("star/coproduct");
    for &k in &squares {
        if data.out_of_window(&k) {
            sc.skip();
            continue;
        }
        for alpha in 0..data.dim(&k) {
            let e = data.basis_elem(k, alpha);
            let es = data.star_apply(&e);
            for &(r, s) in &pairs {
                let lhs = data.delta_rs_basis(k, alpha, (r, s)).star_legs(data);
                let rhs = data.delta_rs(&es, (s, r));
                sc.check(lhs == rhs, || format!("K={k} α={alpha} rows ({r},{s})"));
            }
        }
    }
    sc.emit(&mut rep);

    if data.antipode.is_some() {
        let mut ss = Scan::new("star/antipode-square");
        for &k in &squares {
            if data.out_of_window(&k) {
                ss.skip();
                continue;
            }
            for i in 0..data.dim(&k) {
                let e = data.basis_elem(k, i);
                let lhs =
                    data.star_apply(&data.antipode_apply(&data.star_apply(&data.antipode_apply(&e))));
                ss.check(lhs == e, || format!("K={k} i={i}"));
            }
        }
        ss.emit(&mut rep);
    } else {
        rep.unknown("star/antipode-square", "no antipode data");
    }

    rep
}

/// Equivalence classes of `k ∼ l ⇔ 1(k|l) ≠ 0`; errors when the declared
/// units fail reflexivity, symmetry or transitivity.
pub fn hyperobject_partition(data: &PartialHopfData) -> Result<Vec<BTreeSet<Obj>>> {
    let related = |k: Obj, l: Obj| data.units.contains_key(&(k, l));
    for &k in &data.objects {
        if !related(k, k) {
            return Err(Error::Precondition(format!(
                "hyperobject relation is not reflexive: 1({k}|{k}) = 0"
            )));
        }
        for &l in &data.objects {
            if related(k, l) && !related(l, k) {
                return Err(Error::Precondition(format!(
                    "hyperobject relation is not symmetric at ({k}, {l})"
                )));
            }
            for &m in &data.objects {
                if related(k, l) && related(l, m) && !related(k, m) {
                    return Err(Error::Precondition(format!(
                        "hyperobject relation is not transitive at ({k}, {l}, {m})"
                    )));
                }
            }
        }
    }
    let mut classes: Vec<BTreeSet<Obj>> = Vec::new();
    let mut placed: BTreeSet<Obj> = BTreeSet::new();
    for &k in &data.objects {
        if placed.contains(&k) {
            continue;
        }
        let class: BTreeSet<Obj> = data
            .objects
            .iter()
            .copied()
            .filter(|&l| related(k, l))
            .collect();
        placed.extend(class.iter().copied());
        classes.push(class);
    }
    Ok(classes)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LinkingMode {
    Linking,
    Colinking,
}

/// Linking / co-linking structure over a two-part partition of the objects.
///
/// Linking mode checks that the multipliers `1(i|j) = Σ_{k∈I_i, l∈I_j}
/// 1(k|l)` are central and that every object is linked to the other part by
/// a nonzero unit. Co-linking mode checks that units vanish across the
/// partition and that every object `k` has some `l` across with
/// `A(k l; k l) ≠ 0`.
pub fn verify_linking_structures(
    data: &PartialHopfData,
    part1: &BTreeSet<Obj>,
    part2: &BTreeSet<Obj>,
    mode: LinkingMode,
) -> VerificationReport {
    let mut rep = VerificationReport::new();
    let disjoint = part1.is_disjoint(part2);
    let covers = part1.union(part2).copied().collect::<BTreeSet<_>>() == data.objects;
    rep.record(
        "linking/partition",
        disjoint && covers && !part1.is_empty() && !part2.is_empty(),
        "not a two-part partition of the objects".to_string(),
    );
    if !(disjoint && covers) {
        return rep;
    }

    match mode {
        LinkingMode::Linking => {
            let mut central = Scan::new("linking/centrality");
            for (si, sj, name) in [
                (part1, part1, "(1,1)"),
                (part1, part2, "(1,2)"),
                (part2, part1, "(2,1)"),
                (part2, part2, "(2,2)"),
            ] {
                for k in data.squares() {
                    if data.out_of_window(&k) {
                        central.skip();
                        continue;
                    }
                    let left = si.contains(&k.k) && sj.contains(&k.m);
                    let right = si.contains(&k.l) && sj.contains(&k.n);
                    central.check(left == right, || format!("1{name} on K={k}"));
                }
            }
            central.emit(&mut rep);

            let mut nd = Scan::new("linking/nondegeneracy");
            for (side, other) in [(part1, part2), (part2, part1)] {
                for &r in side {
                    let linked = other.iter().any(|&s| data.units.contains_key(&(r, s)));
                    nd.check(linked, || format!("object {r} not linked across"));
                }
            }
            nd.emit(&mut rep);
        }
        LinkingMode::Colinking => {
            let mut cross = Scan::new("colinking/cross-units-vanish");
            for &k in part1 {
                for &l in part2 {
                    cross.check(!data.units.contains_key(&(k, l)), || format!("1({k}|{l}) ≠ 0"));
                    cross.check(!data.units.contains_key(&(l, k)), || format!("1({l}|{k}) ≠ 0"));
                }
            }
            cross.emit(&mut rep);

            let mut exist = Scan::new("colinking/cross-blocks-exist");
            for (side, other) in [(part1, part2), (part2, part1)] {
                for &k in side {
                    let found = other
                        .iter()
                        .any(|&l| data.dim(&Square::new(k, l, k, l)) > 0);
                    exist.check(found, || format!("no nonzero A({k} l; {k} l) across"));
                }
            }
            exist.emit(&mut rep);
        }
    }
    rep
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partial_hopf::{
        compute_projections, groupoid_algebra, groupoid_union, pair_groupoid, product,
    };
    use crate::scalar::Scalar;

    fn assert_all_pass(data: &PartialHopfData) {
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
                "{name} verifier failed: {:?}",
                rep.failures().collect::<Vec<_>>()
            );
        }
    }

    #[test]
    fn function_algebra_passes_every_verifier() {
        assert_all_pass(&pair_groupoid(3));
    }

    #[test]
    fn groupoid_algebra_passes_every_verifier() {
        assert_all_pass(&groupoid_algebra(&[vec![1, 2, 3]]));
    }

    #[test]
    fn union_and_product_pass_every_verifier() {
        assert_all_pass(&groupoid_union(&[vec![1, 2], vec![3]]));
        let base = groupoid_union(&[vec![1, 2]]);
        let m2 = groupoid_algebra(&[vec![1, 2]]);
        assert_all_pass(&product(&base, &m2, |x, y| x * 10 + y));
    }

    #[test]
    fn canonical_maps_on_a_hand_expanded_instance() {
        // T₁(1(1|2) ⊗ 1(2|2)) = Σ_l 1(1|l) ⊗ 1(l|2)·1(2|2) = 1(1|2) ⊗ 1(2|2),
        // which also equals E₁(1(1|2) ⊗ 1(2|2)) since the middle objects match.
        let d = pair_groupoid(2);
        let a = Square::unit(1, 2);
        let b = Square::unit(2, 2);
        let t1 = t1_pure(&d, a, 0, b, 0);
        let expected = TensorElement::pure(&d, &d.unit_elem(1, 2), &d.unit_elem(2, 2));
        assert_eq!(t1, expected);
        // and T₁(1(1|2) ⊗ 1(2|3)) = 0 on mismatched middle objects
        let d3 = pair_groupoid(3);
        assert!(t1_pure(&d3, a, 0, Square::unit(2, 3), 0).is_zero());
    }

    #[test]
    fn pi_l_computed_two_ways_agrees() {
        // a₍₁₎S(a₍₂₎) must match the expansion of Π^L(a) = Σ_p ε(λ_p a)λ_p
        // over units, on every basis element.
        for d in [pair_groupoid(3), groupoid_algebra(&[vec![1, 2]])] {
            for k in d.squares().collect::<Vec<_>>() {
                for alpha in 0..d.dim(&k) {
                    let e = d.basis_elem(k, alpha);
                    let via_antipode = contract_id_s(&d, &d.delta(&e));
                    let (pi_l, _, _) = compute_projections(&d, &e);
                    let mut expanded = TotalElement::zero();
                    for (p, c) in &pi_l.coeffs {
                        expanded = expanded.add(&d.lambda_elem(*p).scale(c, &d.field));
                    }
                    assert_eq!(via_antipode, expanded, "K={k} α={alpha}");
                }
            }
        }
    }

    #[test]
    fn perturbed_product_fails_with_witness() {
        let mut d = pair_groupoid(2);
        let sq = Square::unit(1, 2);
        d.set_product(sq, sq, vec![vec![vec![Scalar::from_int(2)]]]);
        let rep = verify_partial_algebra(&d);
        assert!(!rep.all_passed());
        assert!(rep.failures().any(|c| c.witness.as_ref().unwrap().contains("(1 1; 2 2)")));
    }

    #[test]
    fn zero_counit_fails_nondegeneracy() {
        let mut d = pair_groupoid(2);
        d.set_counit(Square::unit(1, 1), vec![Scalar::zero()]);
        let rep = verify_partial_bialgebra(&d);
        assert!(rep
            .failures()
            .any(|c| c.axiom == "bialgebra/counit-nondegeneracy"));
    }

    #[test]
    fn dropped_antipode_block_fails() {
        let mut d = pair_groupoid(2);
        d.antipode.as_mut().unwrap().remove(&Square::unit(1, 2));
        let rep = verify_antipode(&d);
        assert!(rep
            .failures()
            .any(|c| c.axiom == "antipode/defined"
                && c.witness.as_ref().unwrap().contains("(1 1; 2 2)")));
        assert!(!verify_canonical_maps(&d).all_passed());
    }

    #[test]
    fn scaled_integral_fails() {
        let mut d = pair_groupoid(2);
        d.set_integral(1, 1, vec![Scalar::from_int(2)]);
        let rep = verify_integral(&d);
        assert!(rep.failures().any(|c| c.axiom == "integral/normalization"));
        let mut d = pair_groupoid(2);
        d.set_integral(1, 2, vec![Scalar::from_int(2)]);
        let rep = verify_integral(&d);
        assert!(rep.failures().any(|c| c.axiom == "integral/unit-values"));
    }

    #[test]
    fn broken_star_fails() {
        let mut d = pair_groupoid(2);
        let mut m = Mat::identity(1);
        m.set(0, 0, Scalar::from_int(-1));
        d.set_star(Square::unit(1, 2), m);
        let rep = verify_star(&d);
        assert!(rep.failures().any(|c| c.axiom == "star/units-selfadjoint"));
        assert!(rep.failures().any(|c| c.axiom == "star/coproduct"));
    }

    #[test]
    fn hyperobject_classes() {
        assert_eq!(hyperobject_partition(&pair_groupoid(3)).unwrap().len(), 1);
        let two = groupoid_union(&[vec![1, 2], vec![3, 4]]);
        let classes = hyperobject_partition(&two).unwrap();
        assert_eq!(classes.len(), 2);
        assert_eq!(classes[0], [1, 2].into_iter().collect());
        // groupoid algebra: only diagonal units, one hyperobject per object
        assert_eq!(
            hyperobject_partition(&groupoid_algebra(&[vec![1, 2]])).unwrap().len(),
            2
        );
        // asymmetric units are rejected
        let mut bad = pair_groupoid(2);
        bad.units.remove(&(1, 2));
        assert!(matches!(
            hyperobject_partition(&bad),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn linking_and_colinking_modes() {
        let p1: BTreeSet<Obj> = [1].into_iter().collect();
        let p2: BTreeSet<Obj> = [2].into_iter().collect();
        // function algebra of the pair groupoid: a linking structure
        let fun = pair_groupoid(2);
        assert!(verify_linking_structures(&fun, &p1, &p2, LinkingMode::Linking).all_passed());
        // ... but not a co-linking one (cross units are nonzero)
        let rep = verify_linking_structures(&fun, &p1, &p2, LinkingMode::Colinking);
        assert!(rep.failures().any(|c| c.axiom == "colinking/cross-units-vanish"));
        // groupoid algebra M₂(ℂ): a co-linking structure
        let alg = groupoid_algebra(&[vec![1, 2]]);
        assert!(verify_linking_structures(&alg, &p1, &p2, LinkingMode::Colinking).all_passed());
        // ... whose unit sums are not central, failing linking mode
        let rep = verify_linking_structures(&alg, &p1, &p2, LinkingMode::Linking);
        assert!(rep.failures().any(|c| c.axiom == "linking/centrality"));
        // product with M₂(ℂ): co-linking between the two copies
        let prod = product(&groupoid_union(&[vec![1, 2]]), &alg, |x, y| x * 10 + y);
        let q1: BTreeSet<Obj> = [11, 21].into_iter().collect();
        let q2: BTreeSet<Obj> = [12, 22].into_iter().collect();
        assert!(verify_linking_structures(&prod, &q1, &q2, LinkingMode::Colinking).all_passed());
        // malformed partition
        let rep = verify_linking_structures(&fun, &p1, &p1, LinkingMode::Linking);
        assert!(!rep.all_passed());
    }
}
