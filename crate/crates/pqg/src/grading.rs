//! Index machinery: squares of objects, bigraded spaces, block maps.
//!
//! Objects are integer labels (`i64`), so lattice windows over ℤ and finite
//! sets `{0, …, n-1}` use the same machinery. A *square* `(k l; m n)` indexes
//! one graded block `A(k l; m n)`; squares compose horizontally when the right
//! column of the first equals the left column of the second, and vertically
//! when the bottom row of the first equals the top row of the second.

use crate::linalg::Mat;
use std::collections::{BTreeMap, BTreeSet};

pub type Obj = i64;

/// A square of objects `(k l; m n)`: top row `(k, l)`, bottom row `(m, n)`,
/// left column `(k, m)`, right column `(l, n)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Square {
    pub k: Obj,
    pub l: Obj,
    pub m: Obj,
    pub n: Obj,
}

impl Square {
    pub fn new(k: Obj, l: Obj, m: Obj, n: Obj) -> Self {
        Square { k, l, m, n }
    }

    /// The unit square of `1(k|m)`, living in `A(k k; m m)`.
    pub fn unit(k: Obj, m: Obj) -> Self {
        Square::new(k, k, m, m)
    }

    pub fn top(&self) -> (Obj, Obj) {
        (self.k, self.l)
    }
    pub fn bottom(&self) -> (Obj, Obj) {
        (self.m, self.n)
    }
    pub fn left(&self) -> (Obj, Obj) {
        (self.k, self.m)
    }
    pub fn right(&self) -> (Obj, Obj) {
        (self.l, self.n)
    }

    /// Horizontal composite `K · L`, defined iff `K_r = L_l`.
    pub fn hcomp(&self, other: &Square) -> Option<Square> {
        if self.right() == other.left() {
            Some(Square::new(self.k, other.l, self.m, other.n))
        } else {
            None
        }
    }

    /// Vertical composite `K ∗ L`, defined iff `K_d = L_u`.
    pub fn vcomp(&self, other: &Square) -> Option<Square> {
        if self.bottom() == other.top() {
            Some(Square::new(self.k, self.l, other.m, other.n))
        } else {
            None
        }
    }

    /// Horizontal flip `K^∘ = (l k; n m)`.
    pub fn circ(&self) -> Square {
        Square::new(self.l, self.k, self.n, self.m)
    }

    /// Vertical flip `K^• = (m n; k l)`.
    pub fn bullet(&self) -> Square {
        Square::new(self.m, self.n, self.k, self.l)
    }

    /// The antipode target grade `K^{∘•} = (n m; l k)`.
    pub fn circ_bullet(&self) -> Square {
        Square::new(self.n, self.m, self.l, self.k)
    }

    /// The grade of `a*` for `a ∈ A(k l; m n)`: `(l k; n m)`.
    pub fn star_grade(&self) -> Square {
        Square::new(self.l, self.k, self.n, self.m)
    }
}

impl std::fmt::Display for Square {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({} {}; {} {})", self.k, self.l, self.m, self.n)
    }
}

/// Direction marker for [`compose_squares`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    Horizontal,
    Vertical,
}

/// Composite of two squares; `None` encodes "undefined".
pub fn compose_squares(k: &Square, l: &Square, dir: Direction) -> Option<Square> {
    match dir {
        Direction::Horizontal => k.hcomp(l),
        Direction::Vertical => k.vcomp(l),
    }
}

/// A finitely supported bigraded vector space: finitely many nonzero blocks
/// `V_kl`, each with a chosen orthonormal basis (so a block is just a
/// dimension here).
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct BigradedSpace {
    pub objects: BTreeSet<Obj>,
    dims: BTreeMap<(Obj, Obj), usize>,
}

impl BigradedSpace {
    pub fn new(objects: impl IntoIterator<Item = Obj>) -> Self {
        BigradedSpace {
            objects: objects.into_iter().collect(),
            dims: BTreeMap::new(),
        }
    }

    pub fn set_dim(&mut self, k: Obj, l: Obj, dim: usize) {
        assert!(self.objects.contains(&k) && self.objects.contains(&l));
        if dim == 0 {
            self.dims.remove(&(k, l));
        } else {
            self.dims.insert((k, l), dim);
        }
    }

    pub fn dim(&self, k: Obj, l: Obj) -> usize {
        self.dims.get(&(k, l)).copied().unwrap_or(0)
    }

    pub fn blocks(&self) -> impl Iterator<Item = ((Obj, Obj), usize)> + '_ {
        self.dims.iter().map(|(&kl, &d)| (kl, d))
    }

    pub fn total_dim(&self) -> usize {
        self.dims.values().sum()
    }

    /// The trivial diagonal space: one-dimensional `V_kk` for each object.
    pub fn diagonal(objects: impl IntoIterator<Item = Obj>) -> Self {
        let mut v = BigradedSpace::new(objects);
        for &k in &v.objects.clone() {
            v.set_dim(k, k, 1);
        }
        v
    }

    /// The blockwise dual: `(V^)_kl = (V_lk)^*`.
    pub fn dual(&self) -> Self {
        let mut d = BigradedSpace::new(self.objects.iter().copied());
        for (&(k, l), &dim) in &self.dims {
            d.set_dim(l, k, dim);
        }
        d
    }

    /// `(k,l) ↦ dim` is row- and column-finite — trivially true for the
    /// finitely supported spaces this artifact works with.
    pub fn is_rcf(&self) -> bool {
        true
    }
}

/// The balanced tensor product over the object set:
/// block `(k,m) = ⊕_l V_kl ⊗ W_lm`.
///
/// Basis order inside a block: summands by ascending `l`, then row-major
/// (`V`-index outer, `W`-index inner) within each summand.
pub fn balanced_tensor(v: &BigradedSpace, w: &BigradedSpace) -> BigradedSpace {
    assert_eq!(v.objects, w.objects, "mismatched object sets");
    let mut out = BigradedSpace::new(v.objects.iter().copied());
    for &k in &v.objects {
        for &m in &w.objects {
            let dim: usize = v
                .objects
                .iter()
                .map(|&l| v.dim(k, l) * w.dim(l, m))
                .sum();
            out.set_dim(k, m, dim);
        }
    }
    out
}

/// The summand layout of balanced-tensor block `(k,m)`:
/// `(l, basis offset, dim V_kl, dim W_lm)` for each contributing middle `l`.
pub fn tensor_summands(
    v: &BigradedSpace,
    w: &BigradedSpace,
    k: Obj,
    m: Obj,
) -> Vec<(Obj, usize, usize, usize)> {
    let mut out = Vec::new();
    let mut offset = 0;
    for &l in &v.objects {
        let dv = v.dim(k, l);
        let dw = w.dim(l, m);
        if dv > 0 && dw > 0 {
            out.push((l, offset, dv, dw));
            offset += dv * dw;
        }
    }
    out
}

/// A grading-preserving family of linear maps `T_kl : V_kl → W_kl`.
/// Blocks absent from the map are zero.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct BlockMap {
    pub blocks: BTreeMap<(Obj, Obj), Mat>,
}

impl BlockMap {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn set(&mut self, k: Obj, l: Obj, m: Mat) {
        if m.is_zero() {
            self.blocks.remove(&(k, l));
        } else {
            self.blocks.insert((k, l), m);
        }
    }

    pub fn get(&self, k: Obj, l: Obj) -> Option<&Mat> {
        self.blocks.get(&(k, l))
    }

    pub fn is_zero(&self) -> bool {
        self.blocks.is_empty()
    }
}

/// Declared dimension assignments over the infinite ℤ-lattice template, for
/// symbolic rcf validation; concrete computations always use finite windows.
#[derive(Debug, Clone)]
pub enum ZTemplate {
    /// Support contained in the band `|k - l| ≤ band` (e.g. the
    /// identity-diagonal assignment is `band = 0`).
    Banded { band: u64 },
    /// Every `(k, l)` nonzero.
    FullSupport,
}

/// Row-and-column finiteness of a declared template.
pub fn check_rcf(template: &ZTemplate) -> bool {
    match template {
        ZTemplate::Banded { .. } => true,
        ZTemplate::FullSupport => false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn square_composition() {
        let k = Square::new(1, 2, 3, 4);
        let l = Square::new(2, 5, 4, 6);
        assert_eq!(k.hcomp(&l), Some(Square::new(1, 5, 3, 6)));
        assert_eq!(k.hcomp(&Square::new(9, 5, 4, 6)), None);
        let v = Square::new(3, 4, 7, 8);
        assert_eq!(k.vcomp(&v), Some(Square::new(1, 2, 7, 8)));
        assert_eq!(
            compose_squares(&k, &l, Direction::Horizontal),
            Some(Square::new(1, 5, 3, 6))
        );
    }

    #[test]
    fn circ_bullet_involutions() {
        let k = Square::new(1, 2, 3, 4);
        assert_eq!(k.circ_bullet(), Square::new(4, 3, 2, 1));
        assert_eq!(k.circ().circ(), k);
        assert_eq!(k.bullet().bullet(), k);
        assert_eq!(k.circ_bullet().circ_bullet(), k);
        let d = Square::new(7, 7, 7, 7);
        assert_eq!(d.circ_bullet(), d);
    }

    #[test]
    fn balanced_tensor_dims() {
        let mut v = BigradedSpace::new([0, 1, 2]);
        v.set_dim(0, 1, 2);
        let mut w = BigradedSpace::new([0, 1, 2]);
        w.set_dim(1, 2, 3);
        let t = balanced_tensor(&v, &w);
        assert_eq!(t.dim(0, 2), 6);
        assert_eq!(t.total_dim(), 6);
        // unit law against the diagonal space
        let unit = BigradedSpace::diagonal([0, 1, 2]);
        let vu = balanced_tensor(&v, &unit);
        assert_eq!(vu.dim(0, 1), v.dim(0, 1));
        assert_eq!(vu.total_dim(), v.total_dim());
    }

    #[test]
    fn rcf_templates() {
        assert!(check_rcf(&ZTemplate::Banded { band: 0 }));
        assert!(!check_rcf(&ZTemplate::FullSupport));
    }

    fn arb_square() -> impl Strategy<Value = Square> {
        (0i64..4, 0i64..4, 0i64..4, 0i64..4).prop_map(|(k, l, m, n)| Square::new(k, l, m, n))
    }

    proptest! {
        // Interchange law on composable quadruples:
        // (K·L) ∗ (K'·L') = (K∗K') · (L∗L') whenever all composites exist.
        #[test]
        fn interchange(k in arb_square(), seed in arb_square()) {
            let l = Square::new(k.l, seed.l, k.n, seed.n);
            let kp = Square::new(k.m, k.n, seed.m, seed.n);
            let lp = Square::new(kp.l, l.n, seed.k, seed.m);
            let lhs = k.hcomp(&l).and_then(|kl| kp.hcomp(&lp).and_then(|kplp| kl.vcomp(&kplp)));
            let rhs = k.vcomp(&kp).and_then(|kkp| l.vcomp(&lp).map(|llp| (kkp, llp)))
                .and_then(|(kkp, llp)| kkp.hcomp(&llp));
            if let (Some(a), Some(b)) = (&lhs, &rhs) {
                prop_assert_eq!(a, b);
            }
        }

        // Iterated balanced tensor products have associative dimensions.
        #[test]
        fn balanced_tensor_assoc_dims(
            dims in proptest::collection::vec((0i64..3, 0i64..3, 1usize..3), 1..5)
        ) {
            let objs = [0i64, 1, 2];
            let mut v = BigradedSpace::new(objs);
            let mut w = BigradedSpace::new(objs);
            let mut u = BigradedSpace::new(objs);
            for (i, (k, l, d)) in dims.iter().enumerate() {
                match i % 3 {
                    0 => v.set_dim(*k, *l, *d),
                    1 => w.set_dim(*k, *l, *d),
                    _ => u.set_dim(*k, *l, *d),
                }
            }
            let a = balanced_tensor(&balanced_tensor(&v, &w), &u);
            let b = balanced_tensor(&v, &balanced_tensor(&w, &u));
            prop_assert_eq!(a, b);
        }
    }
}
