//! Exact coefficient arithmetic.
//!
//! Every other module computes over the `Scalar` type defined here: exact
//! rationals, square roots of rationals (kept formal, never floated), the
//! imaginary unit, and "shift-function" symbols such as `F(l+2)` that carry
//! only the relations declared for them (invertibility, positivity, a square
//! link like `Fh^2 = F`, and a shift action by a color group).
//!
//! Normal forms are unique, so equality is literal comparison:
//!   * square roots of rationals are decomposed over squarefree integers,
//!     e.g. `sqrt(5/4)` is stored as `(1/2)*sqrt(5)`; this makes all
//!     multiplicative coincidences between radicals exact,
//!   * symbol exponents are Laurent integers, reduced through square links.

mod parse;
mod sign;

pub use parse::parse_scalar;
pub use sign::Sign;

use crate::error::{Error, Result};
use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, Zero};
use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

pub type Rat = BigRational;

/// Convenience constructors for exact rationals.
pub fn rat(p: i64, q: i64) -> Rat {
    Rat::new(BigInt::from(p), BigInt::from(q))
}
pub fn int(n: i64) -> Rat {
    Rat::from(BigInt::from(n))
}

/// A declared function symbol of a shift-function field, e.g. `F` on the
/// vertex lattice with display variable `l`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymbolSpec {
    pub name: String,
    /// Display variable, printed as in `F(l+1)`.
    pub var: String,
    /// Declared positive: star fixes it and positivity reports may use it.
    pub positive: bool,
    /// Declared invertible (Laurent exponents allowed).
    pub invertible: bool,
    /// `Some(j)` declares `self^2 = symbols[j]` at the same offset
    /// (used for formal square roots like `Fh^2 = F`).
    pub square_of: Option<usize>,
}

/// A color acting on the vertex lattice by an integer shift.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ColorSpec {
    pub name: String,
    pub shift: i64,
}

/// The ambient *-field all scalars of one computation live in.
///
/// Rationals and square roots of rationals are always available; a field may
/// additionally declare function symbols and a color group of lattice shifts.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct FieldSpec {
    pub symbols: Vec<SymbolSpec>,
    pub colors: Vec<ColorSpec>,
}

impl FieldSpec {
    /// Plain rationals (with ambient formal square roots).
    pub fn rational() -> Self {
        FieldSpec::default()
    }

    pub fn symbol_index(&self, name: &str) -> Option<usize> {
        self.symbols.iter().position(|s| s.name == name)
    }

    pub fn color(&self, name: &str) -> Result<&ColorSpec> {
        self.colors
            .iter()
            .find(|c| c.name == name)
            .ok_or_else(|| Error::UnknownColor(name.to_string()))
    }

    /// Declare a function symbol; returns its index.
    pub fn declare_symbol(&mut self, spec: SymbolSpec) -> usize {
        assert!(
            self.symbol_index(&spec.name).is_none(),
            "duplicate symbol {}",
            spec.name
        );
        if let Some(j) = spec.square_of {
            assert!(j < self.symbols.len(), "square link to undeclared symbol");
        }
        self.symbols.push(spec);
        self.symbols.len() - 1
    }

    pub fn declare_color(&mut self, name: &str, shift: i64) {
        self.colors.push(ColorSpec {
            name: name.to_string(),
            shift,
        });
    }

    /// Returns a field in which `x` has a square root, together with that
    /// root. Idempotent: rationals and radical monomials are decomposed over
    /// squarefree integers, so an existing root is always recognized.
    pub fn adjoin_sqrt(&self, x: &Scalar) -> Result<(FieldSpec, Scalar)> {
        if x.is_zero() {
            return Err(Error::DegenerateRadicand);
        }
        let s = sqrt_in_tower(x)?;
        Ok((self.clone(), s))
    }
}

/// One occurrence of a function symbol in a monomial: symbol index plus
/// integer lattice offset (`F(l+2)` is `(index_of_F, 2)`).
type SymFactor = (usize, i64);

/// A multiplicative monomial: a squarefree set of `sqrt(p)` factors (p prime),
/// an optional factor `i`, and Laurent powers of function symbols.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Default)]
pub struct Monomial {
    primes: BTreeSet<u64>,
    imag: bool,
    syms: BTreeMap<SymFactor, i64>,
}

impl Monomial {
    fn is_one(&self) -> bool {
        self.primes.is_empty() && !self.imag && self.syms.is_empty()
    }

    fn has_syms(&self) -> bool {
        !self.syms.is_empty()
    }

    /// Multiply two monomials; the rational factor produced by collisions
    /// (`sqrt(p)*sqrt(p) = p`, `i*i = -1`) is returned alongside.
    fn mul(&self, other: &Monomial, field: &FieldSpec) -> (Monomial, Rat) {
        let mut coeff = Rat::one();
        let mut primes = BTreeSet::new();
        for p in self.primes.symmetric_difference(&other.primes) {
            primes.insert(*p);
        }
        for p in self.primes.intersection(&other.primes) {
            coeff *= int(*p as i64);
        }
        let imag = match (self.imag, other.imag) {
            (true, true) => {
                coeff = -coeff;
                false
            }
            (a, b) => a || b,
        };
        let mut syms = self.syms.clone();
        for (k, e) in &other.syms {
            *syms.entry(*k).or_insert(0) += e;
        }
        let syms = reduce_syms(syms, field);
        (Monomial { primes, imag, syms }, coeff)
    }

    fn star_sign(&self) -> Rat {
        // Symbols are declared real, sqrt factors have positive radicands;
        // only the imaginary unit conjugates nontrivially.
        if self.imag {
            -Rat::one()
        } else {
            Rat::one()
        }
    }

    fn shifted(&self, delta: i64) -> Monomial {
        Monomial {
            primes: self.primes.clone(),
            imag: self.imag,
            syms: self
                .syms
                .iter()
                .map(|(&(s, o), &e)| ((s, o + delta), e))
                .collect(),
        }
    }
}

/// Apply square links and drop zero exponents; exponent reduction keeps each
/// linked symbol's exponent in {0,1}, carrying the excess into its square.
fn reduce_syms(mut syms: BTreeMap<SymFactor, i64>, field: &FieldSpec) -> BTreeMap<SymFactor, i64> {
    loop {
        let mut changed = false;
        let keys: Vec<SymFactor> = syms.keys().copied().collect();
        for (s, o) in keys {
            let e = *syms.get(&(s, o)).unwrap_or(&0);
            if e == 0 {
                syms.remove(&(s, o));
                continue;
            }
            if let Some(parent) = field.symbols[s].square_of {
                let r = e.rem_euclid(2);
                let carry = (e - r) / 2;
                if carry != 0 {
                    if r == 0 {
                        syms.remove(&(s, o));
                    } else {
                        syms.insert((s, o), r);
                    }
                    *syms.entry((parent, o)).or_insert(0) += carry;
                    changed = true;
                }
            }
        }
        if !changed {
            break;
        }
    }
    syms.retain(|_, e| *e != 0);
    syms
}

/// An exact scalar: a finite sum of rational multiples of monomials,
/// in unique normal form (no zero coefficients).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Default)]
pub struct Scalar {
    terms: BTreeMap<Monomial, Rat>,
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar::default()
    }

    pub fn one() -> Self {
        Scalar::from_rat(Rat::one())
    }

    pub fn from_rat(r: Rat) -> Self {
        let mut terms = BTreeMap::new();
        if !r.is_zero() {
            terms.insert(Monomial::default(), r);
        }
        Scalar { terms }
    }

    pub fn from_int(n: i64) -> Self {
        Scalar::from_rat(int(n))
    }

    /// The imaginary unit of the ambient Gaussian extension.
    pub fn i() -> Self {
        let m = Monomial {
            imag: true,
            ..Monomial::default()
        };
        let mut terms = BTreeMap::new();
        terms.insert(m, Rat::one());
        Scalar { terms }
    }

    /// A single function-symbol factor `symbols[sym](var + offset)`.
    pub fn symbol(sym: usize, offset: i64) -> Self {
        let mut syms = BTreeMap::new();
        syms.insert((sym, offset), 1);
        let m = Monomial {
            syms,
            ..Monomial::default()
        };
        let mut terms = BTreeMap::new();
        terms.insert(m, Rat::one());
        Scalar { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .iter()
                .all(|(m, c)| m.is_one() && c.is_one())
    }

    /// The rational value, if the scalar is purely rational.
    pub fn as_rat(&self) -> Option<Rat> {
        if self.is_zero() {
            return Some(Rat::zero());
        }
        if self.terms.len() == 1 {
            let (m, c) = self.terms.iter().next().unwrap();
            if m.is_one() {
                return Some(c.clone());
            }
        }
        None
    }

    pub fn add(&self, other: &Scalar) -> Scalar {
        let mut terms = self.terms.clone();
        for (m, c) in &other.terms {
            let e = terms.entry(m.clone()).or_insert_with(Rat::zero);
            *e += c;
        }
        terms.retain(|_, c| !c.is_zero());
        Scalar { terms }
    }

    pub fn sub(&self, other: &Scalar) -> Scalar {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Scalar {
        Scalar {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }

    pub fn scale(&self, r: &Rat) -> Scalar {
        if r.is_zero() {
            return Scalar::zero();
        }
        Scalar {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c * r)).collect(),
        }
    }

    pub fn mul(&self, other: &Scalar, field: &FieldSpec) -> Scalar {
        let mut acc: BTreeMap<Monomial, Rat> = BTreeMap::new();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let (m, extra) = ma.mul(mb, field);
                let e = acc.entry(m).or_insert_with(Rat::zero);
                *e += ca * cb * extra;
            }
        }
        acc.retain(|_, c| !c.is_zero());
        Scalar { terms: acc }
    }

    /// The *-involution: fixes rationals, radicals of positive rationals and
    /// declared-real symbols; conjugates the imaginary unit.
    pub fn star(&self) -> Scalar {
        Scalar {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), c * m.star_sign()))
                .collect(),
        }
    }

    /// Multiplicative inverse, if the representation can certify one.
    /// Complete for elements of the radical tower (sums of radical monomials)
    /// and for single monomials of invertible symbols.
    pub fn inv(&self, field: &FieldSpec) -> Option<Scalar> {
        if self.is_zero() {
            return None;
        }
        // Single monomial: invert factor by factor.
        if self.terms.len() == 1 {
            let (m, c) = self.terms.iter().next().unwrap();
            let mut coeff = c.recip();
            for p in &m.primes {
                // 1/sqrt(p) = sqrt(p)/p
                coeff /= int(*p as i64);
            }
            if m.imag {
                // 1/i = -i
                coeff = -coeff;
            }
            for ((s, _), _) in &m.syms {
                let spec = &field.symbols[*s];
                let invertible = spec.invertible
                    || spec
                        .square_of
                        .map(|j| field.symbols[j].invertible)
                        .unwrap_or(false);
                if !invertible {
                    return None;
                }
            }
            let syms = reduce_syms(
                m.syms.iter().map(|(k, e)| (*k, -e)).collect(),
                field,
            );
            let mono = Monomial {
                primes: m.primes.clone(),
                imag: m.imag,
                syms,
            };
            let mut terms = BTreeMap::new();
            terms.insert(mono, coeff);
            return Some(Scalar { terms });
        }
        // Sum with symbol factors: try to pull out a common monomial factor.
        if self.terms.keys().any(|m| m.has_syms()) {
            let first = self.terms.keys().next().unwrap().clone();
            if self.terms.keys().all(|m| m.syms == first.syms) && !first.syms.is_empty() {
                let factor = Scalar {
                    terms: [(
                        Monomial {
                            syms: first.syms.clone(),
                            ..Monomial::default()
                        },
                        Rat::one(),
                    )]
                    .into_iter()
                    .collect(),
                };
                let rest = self.mul(&factor.inv(field)?, field);
                return Some(rest.inv(field)?.mul(&factor.inv(field)?, field));
            }
            return None;
        }
        // Radical-tower sum: conjugate by one radical generator at a time.
        let g = self
            .terms
            .keys()
            .find_map(|m| m.primes.iter().next().copied().map(Gen::Prime).or({
                if m.imag {
                    Some(Gen::Imag)
                } else {
                    None
                }
            }))?;
        let (a, b) = self.split_by(&g);
        // self = a + b*g with g^2 rational, so self * (a - b*g) = a^2 - b^2 g^2.
        let gsq = match g {
            Gen::Prime(p) => int(p as i64),
            Gen::Imag => int(-1),
        };
        let conj = a.sub(&b.mul(&g.as_scalar(), field));
        let norm = a
            .mul(&a, field)
            .sub(&b.mul(&b, field).scale(&gsq));
        let norm_inv = norm.inv(field)?;
        Some(conj.mul(&norm_inv, field))
    }

    /// Split as `a + b*g` for a radical generator `g`.
    fn split_by(&self, g: &Gen) -> (Scalar, Scalar) {
        let mut a = Scalar::zero();
        let mut b = Scalar::zero();
        for (m, c) in &self.terms {
            let (contains, reduced) = match g {
                Gen::Prime(p) => {
                    if m.primes.contains(p) {
                        let mut primes = m.primes.clone();
                        primes.remove(p);
                        (
                            true,
                            Monomial {
                                primes,
                                imag: m.imag,
                                syms: m.syms.clone(),
                            },
                        )
                    } else {
                        (false, m.clone())
                    }
                }
                Gen::Imag => {
                    if m.imag {
                        (
                            true,
                            Monomial {
                                primes: m.primes.clone(),
                                imag: false,
                                syms: m.syms.clone(),
                            },
                        )
                    } else {
                        (false, m.clone())
                    }
                }
            };
            let piece = Scalar {
                terms: [(reduced, c.clone())].into_iter().collect(),
            };
            if contains {
                b = b.add(&piece);
            } else {
                a = a.add(&piece);
            }
        }
        (a, b)
    }

    /// A square root inside the tower, if one is expressible
    /// (rationals and radical monomials; see `sqrt_in_tower`).
    pub fn sqrt(&self) -> Result<Scalar> {
        sqrt_in_tower(self)
    }

    /// A square root in a declared field. Beyond rationals this also handles
    /// a single positive monomial of positive symbols whose symbol content is
    /// a perfect square — either through even exponents or through a declared
    /// square link (a symbol `Fh` with `Fh^2 = F` provides `sqrt(F)`).
    pub fn sqrt_in(&self, field: &FieldSpec) -> Result<Scalar> {
        if let Some(r) = self.as_rat() {
            return sqrt_of_rat(&r);
        }
        if self.terms.len() == 1 {
            let (m, c) = self.terms.iter().next().unwrap();
            if !m.imag && m.primes.is_empty() && c.is_positive() {
                let mut syms: BTreeMap<SymFactor, i64> = BTreeMap::new();
                let mut ok = true;
                for (&(s, o), &e) in &m.syms {
                    if !field.symbols[s].positive {
                        ok = false;
                        break;
                    }
                    if let Some(j) = field
                        .symbols
                        .iter()
                        .position(|sp| sp.square_of == Some(s))
                    {
                        // s = symbols[j]^2, so sqrt(s^e) = symbols[j]^e.
                        *syms.entry((j, o)).or_insert(0) += e;
                    } else if e % 2 == 0 {
                        *syms.entry((s, o)).or_insert(0) += e / 2;
                    } else {
                        ok = false;
                        break;
                    }
                }
                if ok {
                    let root = Scalar {
                        terms: [(
                            Monomial {
                                syms: reduce_syms(syms, field),
                                ..Monomial::default()
                            },
                            Rat::one(),
                        )]
                        .into_iter()
                        .collect(),
                    };
                    return Ok(sqrt_of_rat(c)?.mul(&root, field));
                }
            }
        }
        Err(Error::UnsupportedRadicand(format!(
            "no tower square root for {}",
            self.render(field)
        )))
    }

    /// Whether any term carries a declared function symbol; identities that
    /// hold only under the interpretation of the symbols cannot be decided
    /// for such scalars.
    pub fn is_symbolic(&self) -> bool {
        self.terms.keys().any(Monomial::has_syms)
    }

    /// Apply the shift automorphism of a declared color.
    pub fn shift(&self, color: &str, field: &FieldSpec) -> Result<Scalar> {
        let delta = field.color(color)?.shift;
        Ok(Scalar {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.shifted(delta), c.clone()))
                .collect(),
        })
    }

    /// Render in the scalar literal grammar (round-trips through
    /// `parse_scalar` bit-exactly).
    pub fn render(&self, field: &FieldSpec) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            if i == 0 {
                if neg {
                    out.push('-');
                }
            } else if neg {
                out.push_str(" - ");
            } else {
                out.push_str(" + ");
            }
            render_term(&mut out, m, &c.abs(), field);
        }
        out
    }
}

fn render_term(out: &mut String, m: &Monomial, c: &Rat, field: &FieldSpec) {
    let mut parts: Vec<String> = Vec::new();
    if !c.is_one() || m.is_one() {
        if c.denom().is_one() {
            parts.push(format!("{}", c.numer()));
        } else {
            parts.push(format!("{}/{}", c.numer(), c.denom()));
        }
    }
    if !m.primes.is_empty() {
        let mut rad = BigInt::one();
        for p in &m.primes {
            rad *= BigInt::from(*p);
        }
        parts.push(format!("sqrt({rad})"));
    }
    if m.imag {
        parts.push("i".to_string());
    }
    for (&(s, o), &e) in &m.syms {
        let spec = &field.symbols[s];
        let arg = match o.cmp(&0) {
            std::cmp::Ordering::Equal => spec.var.clone(),
            std::cmp::Ordering::Greater => format!("{}+{}", spec.var, o),
            std::cmp::Ordering::Less => format!("{}-{}", spec.var, -o),
        };
        let mut part = format!("{}({})", spec.name, arg);
        if e != 1 {
            let _ = write!(part, "^{e}");
        }
        parts.push(part);
    }
    out.push_str(&parts.join("*"));
}

/// Radical generators used by the conjugate-inversion recursion.
enum Gen {
    Prime(u64),
    Imag,
}

impl Gen {
    fn as_scalar(&self) -> Scalar {
        match self {
            Gen::Prime(p) => sqrt_of_rat(&int(*p as i64)).unwrap(),
            Gen::Imag => Scalar::i(),
        }
    }
}

/// Square root of a rational, decomposed over squarefree primes:
/// `sqrt(p/q) = (1/q) * sqrt(p*q)` with the squarefree part kept formal and
/// negative radicands producing a factor `i`.
pub fn sqrt_of_rat(r: &Rat) -> Result<Scalar> {
    if r.is_zero() {
        return Ok(Scalar::zero());
    }
    let negative = r.is_negative();
    let abs = r.abs();
    // sqrt(n/d) = sqrt(n*d)/d
    let nd = abs.numer() * abs.denom();
    let (root, squarefree) = split_square(&nd)?;
    let mut coeff = Rat::new(root, abs.denom().clone());
    let mut primes = BTreeSet::new();
    for p in squarefree {
        primes.insert(p);
    }
    let mono = Monomial {
        primes,
        imag: negative,
        ..Monomial::default()
    };
    if coeff.is_zero() {
        coeff = Rat::one();
    }
    let mut terms = BTreeMap::new();
    terms.insert(mono, coeff);
    Ok(Scalar { terms })
}

/// Factor `n = root^2 * (product of distinct primes)`; errors if `n` does not
/// fit the trial-division budget.
fn split_square(n: &BigInt) -> Result<(BigInt, Vec<u64>)> {
    let mut m: u128 = n
        .to_string()
        .parse()
        .map_err(|_| Error::UnsupportedRadicand(format!("radicand too large: {n}")))?;
    let mut root: u128 = 1;
    let mut squarefree = Vec::new();
    let mut p: u128 = 2;
    while p * p <= m {
        if m % p == 0 {
            let mut e = 0u32;
            while m % p == 0 {
                m /= p;
                e += 1;
            }
            for _ in 0..(e / 2) {
                root *= p;
            }
            if e % 2 == 1 {
                squarefree.push(p as u64);
            }
        }
        p += 1;
    }
    if m > 1 {
        squarefree.push(m as u64);
    }
    squarefree.sort_unstable();
    Ok((BigInt::from(root), squarefree))
}

/// Square root of a tower element. Rationals are handled completely through
/// factorization; anything else (a nested radical, a symbol) has no square
/// root expressible in the tower and is rejected.
fn sqrt_in_tower(x: &Scalar) -> Result<Scalar> {
    if let Some(r) = x.as_rat() {
        return sqrt_of_rat(&r);
    }
    Err(Error::UnsupportedRadicand(
        "square roots are only expressible for rational radicands".to_string(),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sqrt_decomposition_is_canonical() {
        // sqrt(5/4) = (1/2) sqrt(5)
        let s = sqrt_of_rat(&rat(5, 4)).unwrap();
        let f = FieldSpec::rational();
        assert_eq!(s.render(&f), "1/2*sqrt(5)");
        // defining identity
        assert_eq!(s.mul(&s, &f), Scalar::from_rat(rat(5, 4)));
    }

    #[test]
    fn adjoin_sqrt_examples() {
        let f = FieldSpec::rational();
        // adjoin sqrt(1): no extension, s = 1
        let (_, s) = f.adjoin_sqrt(&Scalar::one()).unwrap();
        assert!(s.is_one());
        // adjoin sqrt(4/5) in a tower already containing sqrt(5/4):
        // the root is (4/5)*sqrt(5/4) — with canonical radicals, both
        // expressions are literally the same normal form.
        let (_, s45) = f.adjoin_sqrt(&Scalar::from_rat(rat(4, 5))).unwrap();
        let s54 = sqrt_of_rat(&rat(5, 4)).unwrap();
        let expect = s54.scale(&rat(4, 5));
        assert_eq!(s45, expect);
        // zero radicand rejected
        assert!(matches!(
            f.adjoin_sqrt(&Scalar::zero()),
            Err(Error::DegenerateRadicand)
        ));
    }

    #[test]
    fn multiplicative_coincidences_are_exact() {
        let f = FieldSpec::rational();
        // sqrt(5/2) * sqrt(8/5) = 2
        let a = sqrt_of_rat(&rat(5, 2)).unwrap();
        let b = sqrt_of_rat(&rat(8, 5)).unwrap();
        assert_eq!(a.mul(&b, &f), Scalar::from_int(2));
    }

    #[test]
    fn star_examples() {
        let f = FieldSpec::rational();
        assert_eq!(Scalar::from_rat(rat(3, 7)).star(), Scalar::from_rat(rat(3, 7)));
        assert_eq!(Scalar::i().star(), Scalar::i().neg());
        let s = sqrt_of_rat(&rat(5, 4)).unwrap();
        assert_eq!(s.star(), s);
        // i * i = -1 and star is multiplicative-reversing (commutative field)
        assert_eq!(Scalar::i().mul(&Scalar::i(), &f), Scalar::from_int(-1));
    }

    #[test]
    fn inversion_in_the_tower() {
        let f = FieldSpec::rational();
        // (1 + sqrt(2))^{-1} = sqrt(2) - 1
        let x = Scalar::one().add(&sqrt_of_rat(&int(2)).unwrap());
        let inv = x.inv(&f).unwrap();
        assert_eq!(x.mul(&inv, &f), Scalar::one());
        assert_eq!(inv, sqrt_of_rat(&int(2)).unwrap().sub(&Scalar::one()));
        // (3 + i)^{-1}
        let z = Scalar::from_int(3).add(&Scalar::i());
        assert_eq!(z.mul(&z.inv(&f).unwrap(), &f), Scalar::one());
    }

    #[test]
    fn shift_function_field() {
        let mut f = FieldSpec::rational();
        let fi = f.declare_symbol(SymbolSpec {
            name: "F".into(),
            var: "l".into(),
            positive: true,
            invertible: true,
            square_of: None,
        });
        let fh = f.declare_symbol(SymbolSpec {
            name: "Fh".into(),
            var: "l".into(),
            positive: true,
            invertible: true,
            square_of: Some(fi),
        });
        f.declare_color("+", 1);
        f.declare_color("-", -1);
        // shift(F(l), +) = F(l+1)
        let fl = Scalar::symbol(fi, 0);
        assert_eq!(fl.shift("+", &f).unwrap(), Scalar::symbol(fi, 1));
        // inverse shifts compose to the identity
        assert_eq!(
            fl.shift("+", &f).unwrap().shift("-", &f).unwrap(),
            fl
        );
        // shift(1, a) = 1
        assert_eq!(Scalar::one().shift("+", &f).unwrap(), Scalar::one());
        // Fh^2 = F through the square link
        let fhl = Scalar::symbol(fh, 0);
        assert_eq!(fhl.mul(&fhl, &f), Scalar::symbol(fi, 0));
        // Fh^{-1} = Fh * F^{-1}
        let inv = fhl.inv(&f).unwrap();
        assert_eq!(fhl.mul(&inv, &f), Scalar::one());
        // unknown color
        assert!(matches!(
            fl.shift("?", &f),
            Err(Error::UnknownColor(_))
        ));
    }
}
