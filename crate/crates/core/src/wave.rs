//! Natural wave numbers: periodic sequences of roots of unity carried as
//! exact rational frequencies, never as floating-point complex values. The
//! term of the wavelength-n wave at integer phase k is the root with
//! frequency k/n.
//!
//! Frequencies stay unreduced internally. The circular product multiplies
//! terms element-wise and then takes an (m+n)-th root, and the branch of
//! that root is fixed by the phase-proportional numerator; reducing mod 1
//! first would land on a different branch and break closure. Canonical
//! (mod-1, lowest-terms) form exists only for display and equality.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Hard cap on terms materialized by any sequence-producing call. Periods
/// are primorial-sized; everything past the cap stays pointwise.
pub const MATERIALIZE_CAP: u64 = 10_000_000;

/// Exponent of a root of unity as an exact fraction. The numerator is kept
/// proportional to the phase (it may exceed the denominator and may be
/// negative); the denominator is the wavelength or period.
#[derive(Debug, Clone)]
pub struct Frequency {
    num: BigInt,
    den: BigUint,
}

impl Frequency {
    pub fn new(num: impl Into<BigInt>, den: impl Into<BigUint>) -> Result<Self> {
        let den = den.into();
        if den.is_zero() {
            return Err(Error::ZeroWavelength);
        }
        Ok(Self {
            num: num.into(),
            den,
        })
    }

    fn from_parts(num: BigInt, den: BigUint) -> Self {
        debug_assert!(!den.is_zero());
        Self { num, den }
    }

    pub fn numerator(&self) -> &BigInt {
        &self.num
    }

    pub fn denominator(&self) -> &BigUint {
        &self.den
    }

    /// Exponent addition with cross-multiplied denominators; nothing is
    /// reduced, so the numerator stays proportional to the phase.
    pub fn add(&self, other: &Self) -> Self {
        let num = &self.num * BigInt::from(other.den.clone())
            + &other.num * BigInt::from(self.den.clone());
        let den = &self.den * &other.den;
        Self::from_parts(num, den)
    }

    /// r-th root: the exponent is divided by r with the numerator intact,
    /// which is exactly the branch choice the phase dictates.
    pub fn nth_root(&self, r: &BigUint) -> Result<Self> {
        if r.is_zero() {
            return Err(Error::ZeroRootIndex);
        }
        Ok(Self::from_parts(self.num.clone(), &self.den * r))
    }

    /// (numerator mod denominator, denominator) in lowest terms; the residue
    /// lands in [0, den). An integral frequency canonicalizes to (0, 1).
    pub fn canonical(&self) -> (BigUint, BigUint) {
        let den_int = BigInt::from(self.den.clone());
        let residue = self
            .num
            .mod_floor(&den_int)
            .to_biguint()
            .expect("mod_floor of positive modulus is non-negative");
        if residue.is_zero() {
            return (BigUint::zero(), BigUint::one());
        }
        let g = residue.gcd(&self.den);
        (&residue / &g, &self.den / &g)
    }

    /// True when the frequency is an integer, i.e. the root equals 1.
    pub fn is_integral(&self) -> bool {
        (&self.num % BigInt::from(self.den.clone())).is_zero()
    }

    /// Equality of the underlying roots: values agree modulo 1.
    pub fn eq_as_root(&self, other: &Self) -> bool {
        let lhs = &self.num * BigInt::from(other.den.clone());
        let rhs = &other.num * BigInt::from(self.den.clone());
        let modulus = BigInt::from(&self.den * &other.den);
        ((lhs - rhs) % modulus).is_zero()
    }

    /// Mod-1 lowest-terms image: "1" for integral frequencies, else "q/d".
    pub fn canonical_string(&self) -> String {
        let (num, den) = self.canonical();
        if num.is_zero() {
            "1".to_string()
        } else {
            format!("{num}/{den}")
        }
    }
}

/// Raw numerator/denominator as carried, without reduction.
impl fmt::Display for Frequency {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

/// One sequence value: zero, or a root of unity with the given frequency.
#[derive(Debug, Clone)]
pub enum Term {
    Zero,
    Root(Frequency),
}

impl Term {
    /// The root 1, as frequency 0/1.
    pub fn one() -> Self {
        Term::Root(Frequency::from_parts(BigInt::zero(), BigUint::one()))
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Term::Zero)
    }

    /// Element-wise product: zero absorbs, root exponents add unreduced.
    pub fn mul(&self, other: &Self) -> Self {
        match (self, other) {
            (Term::Root(a), Term::Root(b)) => Term::Root(a.add(b)),
            _ => Term::Zero,
        }
    }

    /// r-th root on the branch the unreduced frequency dictates; zero stays
    /// zero.
    pub fn nth_root(&self, r: &BigUint) -> Result<Self> {
        match self {
            Term::Zero => {
                if r.is_zero() {
                    return Err(Error::ZeroRootIndex);
                }
                Ok(Term::Zero)
            }
            Term::Root(f) => Ok(Term::Root(f.nth_root(r)?)),
        }
    }

    /// "0", "1", or the reduced fraction "q/d".
    pub fn canonical_string(&self) -> String {
        match self {
            Term::Zero => "0".to_string(),
            Term::Root(f) => f.canonical_string(),
        }
    }

    /// "0" or the raw fraction exactly as carried.
    pub fn unreduced_string(&self) -> String {
        match self {
            Term::Zero => "0".to_string(),
            Term::Root(f) => f.to_string(),
        }
    }

    pub fn frequency(&self) -> Option<&Frequency> {
        match self {
            Term::Zero => None,
            Term::Root(f) => Some(f),
        }
    }
}

/// Terms compare as roots: zeros agree, roots agree modulo 1.
impl PartialEq for Term {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (Term::Zero, Term::Zero) => true,
            (Term::Root(a), Term::Root(b)) => a.eq_as_root(b),
            _ => false,
        }
    }
}

impl Eq for Term {}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.canonical_string())
    }
}

/// Arithmetic sum of terms, defined in this algebra only when at most one
/// summand is nonzero (a root plus zero is the root).
pub fn sum_terms<'a>(terms: impl IntoIterator<Item = &'a Term>) -> Result<Term> {
    let mut acc = Term::Zero;
    for t in terms {
        if !t.is_zero() {
            if !acc.is_zero() {
                return Err(Error::NonDisjointSum);
            }
            acc = t.clone();
        }
    }
    Ok(acc)
}

/// Which image of the wave to evaluate: the wave itself, its star function
/// (zeros at multiples of the wavelength), or its circle function (1 at
/// multiples, zero elsewhere). Star + Circle = Plain at every phase.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DecompositionKind {
    Plain,
    Star,
    Circle,
}

/// Term of the wavelength-n wave at integer phase k (k = 0 counts as a
/// multiple of every wavelength; negative phases are allowed).
pub fn term_at(
    n: impl Into<BigUint>,
    k: impl Into<BigInt>,
    kind: DecompositionKind,
) -> Result<Term> {
    let n = n.into();
    if n.is_zero() {
        return Err(Error::ZeroWavelength);
    }
    let k = k.into();
    let divides = (&k % BigInt::from(n.clone())).is_zero();
    let root = Term::Root(Frequency::from_parts(k, n));
    Ok(match kind {
        DecompositionKind::Plain => root,
        DecompositionKind::Star => {
            if divides {
                Term::Zero
            } else {
                root
            }
        }
        DecompositionKind::Circle => {
            if divides {
                root
            } else {
                Term::Zero
            }
        }
    })
}

/// First m*n terms (phases 1..=mn) of the wavelength-n wave; the last term
/// of each block of n is the principal phase.
pub fn principal_part(n: impl Into<BigUint>, m: u64, kind: DecompositionKind) -> Result<Vec<Term>> {
    let n = n.into();
    if n.is_zero() {
        return Err(Error::ZeroWavelength);
    }
    if m == 0 {
        return Err(Error::ZeroRepetition);
    }
    let total = &n * BigUint::from(m);
    let count = match total.to_u64() {
        Some(c) if c <= MATERIALIZE_CAP => c,
        _ => {
            return Err(Error::MaterializationCap {
                requested: total.to_string(),
                cap: MATERIALIZE_CAP,
            })
        }
    };
    (1..=count).map(|k| term_at(n.clone(), k, kind)).collect()
}

/// Phase-j translation of the wavelength-n wave at phase k: the root with
/// frequency jk/n. The translated sequence has period n / gcd(j, n).
pub fn translate(
    n: impl Into<BigUint>,
    j: impl Into<BigInt>,
    k: impl Into<BigInt>,
) -> Result<Term> {
    let n = n.into();
    if n.is_zero() {
        return Err(Error::ZeroWavelength);
    }
    Ok(Term::Root(Frequency::from_parts(j.into() * k.into(), n)))
}

/// One term of the circular product built the element-wise way: evaluate the
/// chosen decompositions of the wavelength-m and wavelength-n waves at phase
/// k, multiply, and take the (m+n)-th root. For plain operands this equals
/// the closed-form root k/(mn).
pub fn elementwise_product_term(
    m: impl Into<BigUint>,
    n: impl Into<BigUint>,
    k: impl Into<BigInt>,
    kind_m: DecompositionKind,
    kind_n: DecompositionKind,
) -> Result<Term> {
    let m = m.into();
    let n = n.into();
    let k = k.into();
    let a = term_at(m.clone(), k.clone(), kind_m)?;
    let b = term_at(n.clone(), k, kind_n)?;
    a.mul(&b).nth_root(&(m + n))
}

/// The four decomposed products of the wavelength-m and wavelength-n waves
/// at one phase. Order: circle*circle, circle*star, star*circle, star*star.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FourTermExpansion {
    pub circle_circle: Term,
    pub circle_star: Term,
    pub star_circle: Term,
    pub star_star: Term,
}

impl FourTermExpansion {
    pub fn as_array(&self) -> [&Term; 4] {
        [
            &self.circle_circle,
            &self.circle_star,
            &self.star_circle,
            &self.star_star,
        ]
    }

    /// Element-wise arithmetic sum of the four components; at most one is
    /// nonzero, and the sum equals the plain product term.
    pub fn sum(&self) -> Result<Term> {
        sum_terms(self.as_array())
    }
}

/// Expand the product of two waves through their star/circle decompositions
/// at phase k.
pub fn four_term_expansion(
    m: impl Into<BigUint>,
    n: impl Into<BigUint>,
    k: impl Into<BigInt>,
) -> Result<FourTermExpansion> {
    let m = m.into();
    let n = n.into();
    let k = k.into();
    let part = |km, kn| elementwise_product_term(m.clone(), n.clone(), k.clone(), km, kn);
    use DecompositionKind::{Circle, Star};
    Ok(FourTermExpansion {
        circle_circle: part(Circle, Circle)?,
        circle_star: part(Circle, Star)?,
        star_circle: part(Star, Circle)?,
        star_star: part(Star, Star)?,
    })
}

/// A wave number in factored form: the wavelength plus its prime-power
/// multiset. Terms are evaluated pointwise; the sequence is materialized
/// only on request and only under the cap.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WaveNumber {
    wavelength: BigUint,
    factors: BTreeMap<u64, u32>,
}

impl WaveNumber {
    /// Wave-number image of a natural number, factored by trial division.
    pub fn from_natural(n: u64) -> Result<Self> {
        if n == 0 {
            return Err(Error::ZeroNatural);
        }
        let mut factors = BTreeMap::new();
        let mut rest = n;
        let mut d = 2u64;
        while d * d <= rest {
            while rest.is_multiple_of(d) {
                *factors.entry(d).or_insert(0) += 1;
                rest /= d;
            }
            d += 1;
        }
        if rest > 1 {
            *factors.entry(rest).or_insert(0) += 1;
        }
        Ok(Self {
            wavelength: BigUint::from(n),
            factors,
        })
    }

    /// Natural-number preimage: the wavelength itself.
    pub fn to_natural(&self) -> BigUint {
        self.wavelength.clone()
    }

    pub fn wavelength(&self) -> &BigUint {
        &self.wavelength
    }

    pub fn factors(&self) -> &BTreeMap<u64, u32> {
        &self.factors
    }

    /// Circular product: wavelengths multiply, factor multisets unite.
    pub fn circular_product(&self, other: &Self) -> Self {
        let mut factors = self.factors.clone();
        for (&p, &a) in &other.factors {
            *factors.entry(p).or_insert(0) += a;
        }
        Self {
            wavelength: &self.wavelength * &other.wavelength,
            factors,
        }
    }

    /// N-fold circular product. The empty product is refused: no identity
    /// element is materialized, callers pass the wavelength-1 wave.
    pub fn circular_product_many(waves: &[WaveNumber]) -> Result<WaveNumber> {
        let (first, rest) = waves.split_first().ok_or(Error::EmptyProduct)?;
        Ok(rest
            .iter()
            .fold(first.clone(), |acc, w| acc.circular_product(w)))
    }

    /// Plain term at phase k: the root with frequency k/wavelength.
    pub fn term_at(&self, k: impl Into<BigInt>) -> Term {
        Term::Root(Frequency::from_parts(k.into(), self.wavelength.clone()))
    }

    /// Star or circle (or plain) term at phase k.
    pub fn decomposed_term_at(&self, k: impl Into<BigInt>, kind: DecompositionKind) -> Term {
        term_at(self.wavelength.clone(), k, kind).expect("wavelength is positive by construction")
    }

    /// First m periods of terms, under the materialization cap.
    pub fn principal_part(&self, m: u64, kind: DecompositionKind) -> Result<Vec<Term>> {
        principal_part(self.wavelength.clone(), m, kind)
    }
}
