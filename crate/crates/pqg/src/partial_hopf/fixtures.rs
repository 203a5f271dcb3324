//! Directly constructed example data: groupoid function algebras and
//! componentwise products.

use super::PartialHopfData;
use crate::grading::{Obj, Square};
use crate::linalg::Mat;
use crate::scalar::{FieldSpec, Scalar};
use std::collections::BTreeSet;

/// The function algebra of a disjoint union of pair groupoids: one groupoid
/// `C × C` per class `C` of objects. Blocks are `A(k k; m m) = ℂ·1(k|m)` for
/// `k, m` in the same class, with `Δ_ll(1(k|m)) = 1(k|l) ⊗ 1(l|m)`,
/// `ε(1(k|k)) = 1`, `S(1(k|m)) = 1(m|k)`, selfadjoint units and
/// `φ(1(k|m)) = 1`.
pub fn groupoid_union(classes: &[Vec<Obj>]) -> PartialHopfData {
    let mut seen = BTreeSet::new();
    for c in classes {
        assert!(!c.is_empty(), "empty class");
        for &o in c {
            assert!(seen.insert(o), "object {o} in two classes");
        }
    }
    let mut data = PartialHopfData::new(FieldSpec::rational(), seen.iter().copied());
    for c in classes {
        for &k in c {
            for &m in c {
                data.add_block(Square::unit(k, m), 1);
            }
        }
    }
    let one = || vec![Scalar::one()];
    let one_mat = || Mat::identity(1);
    for c in classes {
        for &k in c {
            for &m in c {
                let sq = Square::unit(k, m);
                data.set_product(sq, sq, vec![vec![one()]]);
                for &l in c {
                    data.set_coproduct(sq, (l, l), vec![one_mat()]);
                }
                data.set_unit(k, m, one());
                data.set_antipode(sq, one_mat());
                data.set_star(sq, one_mat());
                data.set_integral(k, m, one());
            }
            data.set_counit(Square::unit(k, k), one());
        }
    }
    data
}

/// The function algebra of the pair groupoid on objects `1, …, n`.
pub fn pair_groupoid(n: usize) -> PartialHopfData {
    assert!(n > 0);
    groupoid_union(&[(1..=n as Obj).collect()])
}

/// The groupoid *algebra* of a disjoint union of pair groupoids: matrix
/// units `u_kl ∈ A(k l; k l)` for `k, l` in the same class, with
/// `u_kl u_lm = u_km`, `Δ(u_kl) = u_kl ⊗ u_kl`, `ε(u_kl) = 1`,
/// `S(u_kl) = u_lk`, `u_kl* = u_lk` and `φ(u_kk) = 1`. For one class of
/// size `n` this is the partial compact quantum group `Mₙ(ℂ)`.
pub fn groupoid_algebra(classes: &[Vec<Obj>]) -> PartialHopfData {
    let mut seen = BTreeSet::new();
    for c in classes {
        assert!(!c.is_empty(), "empty class");
        for &o in c {
            assert!(seen.insert(o), "object {o} in two classes");
        }
    }
    let mut data = PartialHopfData::new(FieldSpec::rational(), seen.iter().copied());
    for c in classes {
        for &k in c {
            for &l in c {
                data.add_block(Square::new(k, l, k, l), 1);
            }
        }
    }
    let one = || vec![Scalar::one()];
    let one_mat = || Mat::identity(1);
    for c in classes {
        for &k in c {
            for &l in c {
                let sq = Square::new(k, l, k, l);
                for &m in c {
                    // u_kl · u_lm = u_km
                    data.set_product(sq, Square::new(l, m, l, m), vec![vec![one()]]);
                }
                data.set_coproduct(sq, (k, l), vec![one_mat()]);
                data.set_counit(sq, one());
                data.set_antipode(sq, one_mat());
                data.set_star(sq, one_mat());
            }
            data.set_unit(k, k, one());
            data.set_integral(k, k, one());
        }
    }
    data
}

/// The componentwise product of two data sets over paired objects.
///
/// `pair` must be injective on the product of the two object sets; every
/// structure constant of the result is the tensor (Kronecker) product of the
/// factors' structure constants. Both inputs must be untruncated and live in
/// the same scalar field.
pub fn product(
    a: &PartialHopfData,
    b: &PartialHopfData,
    pair: impl Fn(Obj, Obj) -> Obj,
) -> PartialHopfData {
    assert_eq!(a.field, b.field, "mismatched scalar fields");
    assert!(
        a.boundary.is_empty()
            && b.boundary.is_empty()
            && a.truncated_blocks.is_empty()
            && b.truncated_blocks.is_empty(),
        "product of truncated data"
    );
    let mut objects = BTreeSet::new();
    for &x in &a.objects {
        for &y in &b.objects {
            assert!(objects.insert(pair(x, y)), "pairing is not injective");
        }
    }
    let psq = |ka: &Square, kb: &Square| {
        Square::new(
            pair(ka.k, kb.k),
            pair(ka.l, kb.l),
            pair(ka.m, kb.m),
            pair(ka.n, kb.n),
        )
    };
    let mut data = PartialHopfData::new(a.field.clone(), objects);
    for (ka, &da) in &a.blocks {
        for (kb, &db) in &b.blocks {
            data.add_block(psq(ka, kb), da * db);
        }
    }
    // Product tables: basis index (i_a, i_b) ↦ i_a·dim_b + i_b, row-major.
    for ((ka, la), ta) in &a.product {
        for ((kb, lb), tb) in &b.product {
            let k = psq(ka, kb);
            let l = psq(la, lb);
            let dkb = b.dim(kb);
            let dlb = b.dim(lb);
            let dklb = b.dim(&kb.hcomp(lb).unwrap());
            let dkla = a.dim(&ka.hcomp(la).unwrap());
            let mut table = vec![vec![Vec::new(); data.dim(&l)]; data.dim(&k)];
            for (ia, rowa) in ta.iter().enumerate() {
                for ib in 0..dkb {
                    for (ja, va) in rowa.iter().enumerate() {
                        for jb in 0..dlb {
                            let vb = &tb[ib][jb];
                            let mut v = vec![Scalar::zero(); dkla * dklb];
                            for (xa, ca) in va.iter().enumerate() {
                                for (xb, cb) in vb.iter().enumerate() {
                                    v[xa * dklb + xb] = ca.mul(cb, &a.field);
                                }
                            }
                            table[ia * dkb + ib][ja * dlb + jb] = v;
                        }
                    }
                }
            }
            data.set_product(k, l, table);
        }
    }
    for ((ka, rsa), ma) in &a.coproduct {
        for ((kb, rsb), mb) in &b.coproduct {
            let k = psq(ka, kb);
            let rs = (pair(rsa.0, rsb.0), pair(rsa.1, rsb.1));
            let dkb = b.dim(kb);
            let mut mats = Vec::with_capacity(data.dim(&k));
            for mat_a in ma {
                for mat_b in mb.iter().take(dkb) {
                    mats.push(mat_a.kron(mat_b, &a.field));
                }
            }
            data.set_coproduct(k, rs, mats);
        }
    }
    for (ka, va) in &a.counit {
        for (kb, vb) in &b.counit {
            data.set_counit(psq(ka, kb), kron_vec(va, vb, &a.field));
        }
    }
    for (&(ka, ma), va) in &a.units {
        for (&(kb, mb), vb) in &b.units {
            data.set_unit(pair(ka, kb), pair(ma, mb), kron_vec(va, vb, &a.field));
        }
    }
    if let (Some(sa), Some(sb)) = (&a.antipode, &b.antipode) {
        for (ka, mat_a) in sa {
            for (kb, mat_b) in sb {
                data.set_antipode(psq(ka, kb), mat_a.kron(mat_b, &a.field));
            }
        }
    }
    if let (Some(sa), Some(sb)) = (&a.star, &b.star) {
        for (ka, mat_a) in sa {
            for (kb, mat_b) in sb {
                data.set_star(psq(ka, kb), mat_a.kron(mat_b, &a.field));
            }
        }
    }
    if let (Some(pa), Some(pb)) = (&a.integral, &b.integral) {
        for (&(ka, ma), va) in pa {
            for (&(kb, mb), vb) in pb {
                data.set_integral(pair(ka, kb), pair(ma, mb), kron_vec(va, vb, &a.field));
            }
        }
    }
    data
}

fn kron_vec(a: &[Scalar], b: &[Scalar], field: &FieldSpec) -> Vec<Scalar> {
    let mut out = Vec::with_capacity(a.len() * b.len());
    for x in a {
        for y in b {
            out.push(x.mul(y, field));
        }
    }
    out
}
