//! Coefficient rings for super-elements.
//!
//! Two rings are provided: [`Poly`], exact multivariate polynomials over
//! commuting symbols with Gaussian-rational coefficients, and
//! [`Complex64`] for numeric sweeps. Everything above the kernel is generic
//! over [`Coefficient`].

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_complex::{Complex, Complex64};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Exact Gaussian rational `p + q i` with `p, q ∈ ℚ`.
pub type GaussianRational = Complex<BigRational>;

/// How a coefficient prints when it multiplies a monomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactorText {
    /// The coefficient is `-body`.
    pub negative: bool,
    pub body: String,
    /// `body` is a sum and needs parentheses as a factor.
    pub compound: bool,
}

/// A commutative ring with conjugation usable as super-element coefficients.
pub trait Coefficient:
    Clone
    + PartialEq
    + fmt::Debug
    + fmt::Display
    + Send
    + Sync
    + 'static
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn imaginary_unit() -> Self;
    fn from_ratio(numer: i64, denom: i64) -> Self;
    fn conj(&self) -> Self;
    /// Multiplicative inverse, when it exists in the ring.
    fn recip(&self) -> Option<Self>;
    /// `exp(self)`, when representable in the ring.
    fn exp(&self) -> Option<Self>;
    /// Principal square root, when representable in the ring.
    fn sqrt(&self) -> Option<Self>;
    /// Numeric value, if the coefficient has no free symbols.
    fn to_complex(&self) -> Option<Complex64>;
    /// The coefficient equal to a finite double.
    fn from_f64(x: f64) -> Option<Self>;
    fn factor_text(&self) -> FactorText;

    fn is_one(&self) -> bool {
        *self == Self::one()
    }

    fn from_i64(n: i64) -> Self {
        Self::from_ratio(n, 1)
    }

    /// Numeric value if it is real.
    fn to_real(&self) -> Option<f64> {
        self.to_complex().filter(|z| z.im == 0.0).map(|z| z.re)
    }
}

// ---------------------------------------------------------------------------
// Symbols

/// A commuting parameter such as `nbar`, or one half of a conjugate pair
/// such as `lambda` / `lambdas`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Symbol {
    name: Arc<str>,
    kind: SymbolKind,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
enum SymbolKind {
    Real,
    Complex { conjugated: bool },
}

impl Symbol {
    pub fn real(name: &str) -> Self {
        Symbol { name: name.into(), kind: SymbolKind::Real }
    }

    /// A complex symbol and its conjugate partner.
    pub fn complex_pair(name: &str) -> (Self, Self) {
        let name: Arc<str> = name.into();
        (
            Symbol { name: name.clone(), kind: SymbolKind::Complex { conjugated: false } },
            Symbol { name, kind: SymbolKind::Complex { conjugated: true } },
        )
    }

    pub fn base_name(&self) -> &str {
        &self.name
    }

    pub fn is_real(&self) -> bool {
        self.kind == SymbolKind::Real
    }

    pub fn conj(&self) -> Self {
        match self.kind {
            SymbolKind::Real => self.clone(),
            SymbolKind::Complex { conjugated } => Symbol {
                name: self.name.clone(),
                kind: SymbolKind::Complex { conjugated: !conjugated },
            },
        }
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            SymbolKind::Complex { conjugated: true } => write!(f, "{}s", self.name),
            _ => f.write_str(&self.name),
        }
    }
}

impl fmt::Debug for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

// ---------------------------------------------------------------------------
// Polynomials

/// Product of symbol powers; sorted by symbol, exponents nonzero.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct SymbolMonomial(Vec<(Symbol, u32)>);

impl SymbolMonomial {
    pub fn degree(&self) -> u32 {
        self.0.iter().map(|(_, e)| e).sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn factors(&self) -> &[(Symbol, u32)] {
        &self.0
    }

    fn mul(&self, other: &Self) -> Self {
        let mut out: BTreeMap<Symbol, u32> = self.0.iter().cloned().collect();
        for (s, e) in &other.0 {
            *out.entry(s.clone()).or_insert(0) += e;
        }
        SymbolMonomial(out.into_iter().collect())
    }

    fn conj(&self) -> Self {
        let out: BTreeMap<Symbol, u32> = self.0.iter().map(|(s, e)| (s.conj(), *e)).collect();
        SymbolMonomial(out.into_iter().collect())
    }
}

impl Ord for SymbolMonomial {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.degree().cmp(&other.degree()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for SymbolMonomial {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for SymbolMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, (s, e)) in self.0.iter().enumerate() {
            if k > 0 {
                f.write_str("*")?;
            }
            if *e == 1 {
                write!(f, "{s}")?;
            } else {
                write!(f, "{s}^{e}")?;
            }
        }
        Ok(())
    }
}

/// Exact polynomial in commuting symbols with Gaussian-rational coefficients.
///
/// Zero is the empty map; no zero coefficients are ever stored.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct Poly {
    terms: BTreeMap<SymbolMonomial, GaussianRational>,
}

fn gauss_is_zero(c: &GaussianRational) -> bool {
    c.re.is_zero() && c.im.is_zero()
}

fn rational_text(q: &BigRational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

fn rational_to_f64(q: &BigRational) -> f64 {
    q.to_f64().unwrap_or(f64::NAN)
}

/// Sign-split text of a Gaussian rational.
fn gauss_factor_text(c: &GaussianRational) -> FactorText {
    match (c.re.is_zero(), c.im.is_zero()) {
        (_, true) => FactorText {
            negative: c.re.is_negative(),
            body: rational_text(&c.re.abs()),
            compound: false,
        },
        (true, false) => {
            let mag = c.im.abs();
            let body = if mag.is_one() { "i".to_string() } else { format!("{}*i", rational_text(&mag)) };
            FactorText { negative: c.im.is_negative(), body, compound: false }
        }
        (false, false) => {
            let im = c.im.abs();
            let im_text = if im.is_one() { "i".to_string() } else { format!("{}*i", rational_text(&im)) };
            let sign = if c.im.is_negative() { "-" } else { "+" };
            FactorText {
                negative: false,
                body: format!("{} {} {}", rational_text(&c.re), sign, im_text),
                compound: true,
            }
        }
    }
}

/// Joins `(factor, tail)` pairs into a signed sum. An empty `tail` means
/// the factor stands alone.
pub(crate) fn write_signed_sum<'a, I>(f: &mut fmt::Formatter<'_>, terms: I) -> fmt::Result
where
    I: IntoIterator<Item = (FactorText, &'a str)>,
{
    let mut first = true;
    for (coef, tail) in terms {
        let text = if tail.is_empty() {
            coef.body.clone()
        } else if coef.body == "1" && !coef.compound {
            tail.to_string()
        } else if coef.compound {
            format!("({})*{}", coef.body, tail)
        } else {
            format!("{}*{}", coef.body, tail)
        };
        match (first, coef.negative) {
            (true, true) => write!(f, "-{text}")?,
            (true, false) => f.write_str(&text)?,
            (false, true) => write!(f, " - {text}")?,
            (false, false) => write!(f, " + {text}")?,
        }
        first = false;
    }
    if first {
        f.write_str("0")?;
    }
    Ok(())
}

impl Poly {
    pub fn constant(c: GaussianRational) -> Self {
        let mut terms = BTreeMap::new();
        if !gauss_is_zero(&c) {
            terms.insert(SymbolMonomial::default(), c);
        }
        Poly { terms }
    }

    pub fn rational(q: BigRational) -> Self {
        Self::constant(Complex::new(q, BigRational::zero()))
    }

    pub fn symbol(s: Symbol) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(SymbolMonomial(vec![(s, 1)]), Complex::new(BigRational::one(), BigRational::zero()));
        Poly { terms }
    }

    /// Exact value of a finite double.
    pub fn from_f64(x: f64) -> Option<Self> {
        BigRational::from_float(x).map(Self::rational)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&SymbolMonomial, &GaussianRational)> {
        self.terms.iter()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(SymbolMonomial::is_one)
    }

    pub fn constant_term(&self) -> GaussianRational {
        self.terms
            .get(&SymbolMonomial::default())
            .cloned()
            .unwrap_or_else(|| Complex::new(BigRational::zero(), BigRational::zero()))
    }

    pub fn symbols(&self) -> Vec<Symbol> {
        let mut out: Vec<Symbol> =
            self.terms.keys().flat_map(|m| m.0.iter().map(|(s, _)| s.clone())).collect();
        out.sort();
        out.dedup();
        out
    }

    fn insert_term(&mut self, mono: SymbolMonomial, c: GaussianRational) {
        use std::collections::btree_map::Entry;
        if gauss_is_zero(&c) {
            return;
        }
        match self.terms.entry(mono) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                let sum = o.get().clone() + c;
                if gauss_is_zero(&sum) {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    /// Replaces every occurrence of `sym` by `value`.
    pub fn substitute(&self, sym: &Symbol, value: &Poly) -> Poly {
        let mut out = Poly::default();
        for (mono, c) in &self.terms {
            let mut rest = Vec::new();
            let mut power = 0;
            for (s, e) in &mono.0 {
                if s == sym {
                    power = *e;
                } else {
                    rest.push((s.clone(), *e));
                }
            }
            let mut term = Poly { terms: BTreeMap::from([(SymbolMonomial(rest), c.clone())]) };
            for _ in 0..power {
                term = term * value.clone();
            }
            out = out + term;
        }
        out
    }

    /// Numeric value with every symbol bound by `bind`; `None` if a symbol
    /// is unbound.
    pub fn evaluate(&self, bind: impl Fn(&Symbol) -> Option<Complex64>) -> Option<Complex64> {
        let mut acc = Complex64::new(0.0, 0.0);
        for (mono, c) in &self.terms {
            let mut v = Complex64::new(rational_to_f64(&c.re), rational_to_f64(&c.im));
            for (s, e) in &mono.0 {
                v *= bind(s)?.powu(*e);
            }
            acc += v;
        }
        Some(acc)
    }
}

impl Add for Poly {
    type Output = Poly;
    fn add(mut self, rhs: Poly) -> Poly {
        for (m, c) in rhs.terms {
            self.insert_term(m, c);
        }
        self
    }
}

impl Sub for Poly {
    type Output = Poly;
    fn sub(self, rhs: Poly) -> Poly {
        self + (-rhs)
    }
}

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly { terms: self.terms.into_iter().map(|(m, c)| (m, -c)).collect() }
    }
}

impl Mul for Poly {
    type Output = Poly;
    fn mul(self, rhs: Poly) -> Poly {
        let mut out = Poly::default();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                out.insert_term(m1.mul(m2), c1.clone() * c2.clone());
            }
        }
        out
    }
}

impl Coefficient for Poly {
    fn zero() -> Self {
        Poly::default()
    }

    fn one() -> Self {
        Poly::rational(BigRational::one())
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn imaginary_unit() -> Self {
        Poly::constant(Complex::new(BigRational::zero(), BigRational::one()))
    }

    fn from_ratio(numer: i64, denom: i64) -> Self {
        Poly::rational(BigRational::new(BigInt::from(numer), BigInt::from(denom)))
    }

    fn conj(&self) -> Self {
        let mut out = Poly::default();
        for (m, c) in &self.terms {
            out.insert_term(m.conj(), c.conj());
        }
        out
    }

    fn recip(&self) -> Option<Self> {
        if !self.is_constant() || self.is_zero() {
            return None;
        }
        Some(Poly::constant(self.constant_term().inv()))
    }

    fn exp(&self) -> Option<Self> {
        self.is_zero().then(Self::one)
    }

    fn sqrt(&self) -> Option<Self> {
        (self.is_zero() || self.is_one()).then(|| self.clone())
    }

    fn to_complex(&self) -> Option<Complex64> {
        self.is_constant().then(|| {
            let c = self.constant_term();
            Complex64::new(rational_to_f64(&c.re), rational_to_f64(&c.im))
        })
    }

    fn from_f64(x: f64) -> Option<Self> {
        Poly::from_f64(x)
    }

    fn factor_text(&self) -> FactorText {
        let mut iter = self.terms.iter();
        match (iter.next(), iter.next()) {
            (None, _) => FactorText { negative: false, body: "0".into(), compound: false },
            (Some((mono, c)), None) => {
                let num = gauss_factor_text(c);
                if mono.is_one() {
                    num
                } else if num.compound {
                    FactorText {
                        negative: false,
                        body: format!("({})*{}", num.body, mono),
                        compound: false,
                    }
                } else if num.body == "1" {
                    FactorText { negative: num.negative, body: mono.to_string(), compound: false }
                } else {
                    FactorText {
                        negative: num.negative,
                        body: format!("{}*{}", num.body, mono),
                        compound: false,
                    }
                }
            }
            _ => FactorText { negative: false, body: self.to_string(), compound: true },
        }
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let texts: Vec<(FactorText, String)> =
            self.terms.iter().map(|(m, c)| (gauss_factor_text(c), m.to_string())).collect();
        write_signed_sum(f, texts.iter().map(|(c, m)| (c.clone(), m.as_str())))
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({self})")
    }
}

// ---------------------------------------------------------------------------
// Floating point

impl Coefficient for Complex64 {
    fn zero() -> Self {
        Complex64::new(0.0, 0.0)
    }

    fn one() -> Self {
        Complex64::new(1.0, 0.0)
    }

    fn is_zero(&self) -> bool {
        self.re == 0.0 && self.im == 0.0
    }

    fn imaginary_unit() -> Self {
        Complex64::new(0.0, 1.0)
    }

    fn from_ratio(numer: i64, denom: i64) -> Self {
        Complex64::new(numer as f64 / denom as f64, 0.0)
    }

    fn conj(&self) -> Self {
        Complex::conj(self)
    }

    fn recip(&self) -> Option<Self> {
        (!Coefficient::is_zero(self)).then(|| self.inv())
    }

    fn exp(&self) -> Option<Self> {
        Some(Complex::exp(*self))
    }

    fn sqrt(&self) -> Option<Self> {
        Some(Complex::sqrt(*self))
    }

    fn to_complex(&self) -> Option<Complex64> {
        Some(*self)
    }

    fn from_f64(x: f64) -> Option<Self> {
        x.is_finite().then(|| Complex64::new(x, 0.0))
    }

    fn factor_text(&self) -> FactorText {
        if self.im == 0.0 {
            FactorText {
                negative: self.re.is_sign_negative() && self.re != 0.0,
                body: format!("{}", self.re.abs()),
                compound: false,
            }
        } else if self.re == 0.0 {
            FactorText {
                negative: self.im < 0.0,
                body: format!("{}*i", self.im.abs()),
                compound: false,
            }
        } else {
            let sign = if self.im < 0.0 { "-" } else { "+" };
            FactorText {
                negative: false,
                body: format!("{} {} {}*i", self.re, sign, self.im.abs()),
                compound: true,
            }
        }
    }
}
