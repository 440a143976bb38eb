//! Exact scalars: cyclotomic numbers and residues modulo a prime.
//!
//! Every computation in the crate runs over one of two kinds of field:
//! a cyclotomic field `Q(z_N)` (conductor promoted lazily to the lcm of the
//! operands) or a prime field `F_p` carrying a designated primitive `N`-th
//! root of unity. Rational constants such as `1/2` are shared by both: a
//! rational scalar meeting a residue is reduced modulo `p` on the fly.

mod cyclotomic;
mod rational;

use alloc::format;
use alloc::string::{String, ToString};
use alloc::sync::Arc;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_integer::Integer;

pub use cyclotomic::{cyclotomic_polynomial, CycloCtx, Cyclotomic};
pub use rational::Rational;
pub(crate) use rational::{inv_mod, mul_mod, pow_mod};

use crate::error::{Error, Result};

/// Residue modulo a prime `p`.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct ModP {
    pub value: u64,
    pub p: u64,
}

/// An exact field element.
#[derive(Clone)]
pub enum Scalar {
    Cyclo(Cyclotomic),
    Mod(ModP),
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar::Cyclo(Cyclotomic::zero())
    }

    pub fn one() -> Self {
        Scalar::from_int(1)
    }

    pub fn from_int(n: i64) -> Self {
        Scalar::Cyclo(Cyclotomic::rational(Rational::from_int(n)))
    }

    pub fn from_ratio(n: i64, d: i64) -> Self {
        Scalar::Cyclo(Cyclotomic::rational(Rational::new(n, d)))
    }

    pub fn from_rational(r: Rational) -> Self {
        Scalar::Cyclo(Cyclotomic::rational(r))
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Cyclo(c) => c.is_zero(),
            Scalar::Mod(m) => m.value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Cyclo(c) => c.as_rational().is_some_and(|r| r.is_one()),
            Scalar::Mod(m) => m.value == 1,
        }
    }

    /// The rational value, if this scalar is a rational number.
    pub fn as_rational(&self) -> Option<Rational> {
        match self {
            Scalar::Cyclo(c) => c.as_rational(),
            Scalar::Mod(_) => None,
        }
    }

    /// Characteristic of the field this scalar lives in (0 for cyclotomic).
    pub fn characteristic(&self) -> u64 {
        match self {
            Scalar::Cyclo(_) => 0,
            Scalar::Mod(m) => m.p,
        }
    }

    pub fn conductor(&self) -> u32 {
        match self {
            Scalar::Cyclo(c) => c.conductor(),
            Scalar::Mod(_) => 1,
        }
    }

    fn coerce_mod(c: &Cyclotomic, p: u64) -> ModP {
        let r = c
            .as_rational()
            .unwrap_or_else(|| panic!("cyclotomic scalar {c} mixed with residues mod {p}"));
        let value = r.mod_p(p).unwrap_or_else(|| panic!("{r} has no residue mod {p}"));
        ModP { value, p }
    }

    fn binary(
        &self,
        other: &Self,
        cyc: impl Fn(&Cyclotomic, &Cyclotomic) -> Cyclotomic,
        modp: impl Fn(u64, u64, u64) -> u64,
    ) -> Scalar {
        match (self, other) {
            (Scalar::Cyclo(a), Scalar::Cyclo(b)) => Scalar::Cyclo(cyc(a, b)),
            (Scalar::Mod(a), Scalar::Mod(b)) => {
                assert_eq!(a.p, b.p, "residues modulo different primes");
                Scalar::Mod(ModP { value: modp(a.value, b.value, a.p), p: a.p })
            }
            (Scalar::Mod(a), Scalar::Cyclo(b)) => {
                let b = Self::coerce_mod(b, a.p);
                Scalar::Mod(ModP { value: modp(a.value, b.value, a.p), p: a.p })
            }
            (Scalar::Cyclo(a), Scalar::Mod(b)) => {
                let a = Self::coerce_mod(a, b.p);
                Scalar::Mod(ModP { value: modp(a.value, b.value, b.p), p: b.p })
            }
        }
    }

    /// Multiplicative inverse; `DivisionByZero` for zero.
    pub fn inv(&self) -> Result<Scalar> {
        match self {
            Scalar::Cyclo(c) => c.inv().map(Scalar::Cyclo).ok_or(Error::DivisionByZero),
            Scalar::Mod(m) => inv_mod(m.value, m.p)
                .map(|value| Scalar::Mod(ModP { value, p: m.p }))
                .ok_or(Error::DivisionByZero),
        }
    }

    pub fn div(&self, other: &Scalar) -> Result<Scalar> {
        Ok(self * &other.inv()?)
    }

    pub fn pow(&self, mut e: u64) -> Scalar {
        let mut base = self.clone();
        let mut acc = Scalar::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// In-place `self += a * b`, the kernel of every dense product.
    pub fn add_mul(&mut self, a: &Scalar, b: &Scalar) {
        if a.is_zero() || b.is_zero() {
            return;
        }
        let t = a * b;
        match (&mut *self, &t) {
            (Scalar::Cyclo(x), Scalar::Cyclo(y)) => x.add_assign(y),
            _ => *self = &*self + &t,
        }
    }

    /// Structural-size proxy used to prefer cheap pivots.
    pub fn height(&self) -> u64 {
        match self {
            Scalar::Cyclo(c) => c.coefficients().iter().map(|r| r.height()).sum::<u64>(),
            Scalar::Mod(_) => 1,
        }
    }

    /// Field tag: `Q(z_N)` or `F_p`.
    /// Compact human form: rationals print bare, everything else as in
    /// `Display`.
    pub fn pretty(&self) -> String {
        match self.as_rational() {
            Some(r) => r.to_string(),
            None => self.to_string(),
        }
    }

    pub fn field_tag(&self) -> String {
        match self {
            Scalar::Cyclo(c) => format!("Q(z_{})", c.conductor()),
            Scalar::Mod(m) => format!("F_{}", m.p),
        }
    }
}

impl PartialEq for Scalar {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (Scalar::Cyclo(a), Scalar::Cyclo(b)) => a.equals(b),
            (Scalar::Mod(a), Scalar::Mod(b)) => a == b,
            (Scalar::Mod(a), Scalar::Cyclo(b)) | (Scalar::Cyclo(b), Scalar::Mod(a)) => {
                b.as_rational().and_then(|r| r.mod_p(a.p)) == Some(a.value)
            }
        }
    }
}

impl Eq for Scalar {}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        self.binary(rhs, |a, b| a.add(b), |a, b, p| (a + b) % p)
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        self.binary(rhs, |a, b| a.add(&b.neg()), |a, b, p| (a + p - b) % p)
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        self.binary(rhs, |a, b| a.mul(b), mul_mod)
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Cyclo(c) => Scalar::Cyclo(c.neg()),
            Scalar::Mod(m) => Scalar::Mod(ModP { value: (m.p - m.value) % m.p, p: m.p }),
        }
    }
}

impl Add for Scalar {
    type Output = Scalar;
    fn add(self, rhs: Scalar) -> Scalar {
        &self + &rhs
    }
}

impl Sub for Scalar {
    type Output = Scalar;
    fn sub(self, rhs: Scalar) -> Scalar {
        &self - &rhs
    }
}

impl Mul for Scalar {
    type Output = Scalar;
    fn mul(self, rhs: Scalar) -> Scalar {
        &self * &rhs
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::from_int(n)
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Cyclo(c) => write!(f, "{c}"),
            Scalar::Mod(m) => write!(f, "{} mod {}", m.value, m.p),
        }
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Cyclo(c) if !c.is_rational() => write!(f, "[{}] {c}", self.field_tag()),
            _ => write!(f, "{self}"),
        }
    }
}

/// Description of a field, validated by [`Field::new`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FieldSpec {
    /// `Q(z_N)`.
    Cyclotomic { conductor: u32 },
    /// `F_p` with a designated primitive root of unity of order `root_order`.
    Prime { modulus: u64, root_order: u64 },
}

/// A validated field handle.
#[derive(Clone, Debug)]
pub struct Field {
    spec: FieldSpec,
    ctx: Option<Arc<CycloCtx>>,
    /// Designated primitive `root_order`-th root (prime fields).
    root: u64,
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

fn prime_factors(mut n: u64) -> alloc::vec::Vec<u64> {
    let mut out = alloc::vec::Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Smallest generator of the multiplicative group of `F_p`.
pub fn primitive_root_mod(p: u64) -> u64 {
    if p == 2 {
        return 1;
    }
    let fs = prime_factors(p - 1);
    (2..p)
        .find(|&g| fs.iter().all(|&q| pow_mod(g, (p - 1) / q, p) != 1))
        .expect("prime fields have generators")
}

impl Field {
    pub fn new(spec: FieldSpec) -> Result<Field> {
        match spec {
            FieldSpec::Cyclotomic { conductor } => {
                if conductor == 0 {
                    return Err(Error::InvalidField("conductor must be positive".to_string()));
                }
                Ok(Field { spec, ctx: Some(CycloCtx::new(conductor)), root: 0 })
            }
            FieldSpec::Prime { modulus, root_order } => {
                if !is_prime(modulus) {
                    return Err(Error::InvalidField(format!("{modulus} is not prime")));
                }
                if root_order == 0 || (modulus - 1) % root_order != 0 {
                    return Err(Error::InvalidField(format!(
                        "{root_order} does not divide {modulus} - 1"
                    )));
                }
                let g = primitive_root_mod(modulus);
                let root = pow_mod(g, (modulus - 1) / root_order, modulus);
                Ok(Field { spec, ctx: None, root })
            }
        }
    }

    pub fn cyclotomic(conductor: u32) -> Result<Field> {
        Field::new(FieldSpec::Cyclotomic { conductor })
    }

    pub fn prime(modulus: u64, root_order: u64) -> Result<Field> {
        Field::new(FieldSpec::Prime { modulus, root_order })
    }

    pub fn rationals() -> Field {
        Field::cyclotomic(1).expect("conductor 1 is valid")
    }

    pub fn spec(&self) -> FieldSpec {
        self.spec
    }

    pub fn characteristic(&self) -> u64 {
        match self.spec {
            FieldSpec::Cyclotomic { .. } => 0,
            FieldSpec::Prime { modulus, .. } => modulus,
        }
    }

    /// Order of the roots of unity this handle is known to carry.
    pub fn root_order(&self) -> u64 {
        match self.spec {
            FieldSpec::Cyclotomic { conductor } => conductor as u64,
            FieldSpec::Prime { root_order, .. } => root_order,
        }
    }

    pub fn zero(&self) -> Scalar {
        match self.spec {
            FieldSpec::Cyclotomic { .. } => Scalar::zero(),
            FieldSpec::Prime { modulus, .. } => Scalar::Mod(ModP { value: 0, p: modulus }),
        }
    }

    pub fn one(&self) -> Scalar {
        self.from_int(1)
    }

    pub fn from_int(&self, n: i64) -> Scalar {
        match self.spec {
            FieldSpec::Cyclotomic { .. } => Scalar::from_int(n),
            FieldSpec::Prime { modulus, .. } => Scalar::Mod(ModP {
                value: (n as i128).rem_euclid(modulus as i128) as u64,
                p: modulus,
            }),
        }
    }

    /// Primitive `m`-th root of unity, compatible across divisors:
    /// `primitive_root(m)^(m/d) == primitive_root(d)`.
    pub fn primitive_root(&self, m: u64) -> Result<Scalar> {
        self.root_of_unity(m, 1)
    }

    /// `primitive_root(m)^k`.
    pub fn root_of_unity(&self, m: u64, k: i64) -> Result<Scalar> {
        if m == 0 {
            return Err(Error::RootUnavailable { order: 0, field: self.to_string() });
        }
        let k = k.rem_euclid(m as i64) as u64;
        match self.spec {
            FieldSpec::Cyclotomic { conductor } => {
                let ctx = match &self.ctx {
                    Some(c) if c.n as u64 == m => c.clone(),
                    Some(c) if (conductor as u64) % m == 0 => {
                        return Ok(Scalar::Cyclo(Cyclotomic::root_power(
                            c,
                            k * (conductor as u64 / m),
                        )));
                    }
                    _ => CycloCtx::new(m as u32),
                };
                Ok(Scalar::Cyclo(Cyclotomic::root_power(&ctx, k)))
            }
            FieldSpec::Prime { modulus, root_order } => {
                if root_order % m != 0 {
                    return Err(Error::RootUnavailable { order: m, field: self.to_string() });
                }
                let base = pow_mod(self.root, root_order / m, modulus);
                Ok(Scalar::Mod(ModP { value: pow_mod(base, k, modulus), p: modulus }))
            }
        }
    }

    /// Maps a cyclotomic scalar into this field.
    ///
    /// For prime fields this is the ring map sending `z_N` to the designated
    /// root, defined when the conductor divides the root order and `p` does
    /// not divide any denominator.
    pub fn reduce(&self, s: &Scalar) -> Result<Scalar> {
        match (self.spec, s) {
            (FieldSpec::Cyclotomic { .. }, Scalar::Cyclo(_)) => Ok(s.clone()),
            (FieldSpec::Prime { modulus, .. }, Scalar::Mod(m)) if m.p == modulus => Ok(s.clone()),
            (FieldSpec::Prime { modulus, .. }, Scalar::Cyclo(c)) => {
                let n = c.conductor() as u64;
                let z = self.root_of_unity(n, 1)?;
                let mut acc = self.zero();
                let mut power = self.one();
                for coeff in c.coefficients() {
                    let r = coeff.mod_p(modulus).ok_or_else(|| {
                        Error::InvalidField(format!("{coeff} has no residue mod {modulus}"))
                    })?;
                    acc = &acc + &(&power * &Scalar::Mod(ModP { value: r, p: modulus }));
                    power = &power * &z;
                }
                Ok(acc)
            }
            _ => Err(Error::InvalidField(format!("cannot map {s:?} into {self}"))),
        }
    }

    /// Whether `n` is invertible in the field.
    pub fn is_unit(&self, n: i64) -> bool {
        match self.spec {
            FieldSpec::Cyclotomic { .. } => n != 0,
            FieldSpec::Prime { modulus, .. } => (n as i128).rem_euclid(modulus as i128) != 0,
        }
    }

    /// Smallest field of the same kind that also contains `m`-th roots.
    pub fn with_roots(&self, m: u64) -> Result<Field> {
        match self.spec {
            FieldSpec::Cyclotomic { conductor } => {
                Field::cyclotomic((conductor as u64).lcm(&m) as u32)
            }
            FieldSpec::Prime { root_order, .. } if root_order % m == 0 => Ok(self.clone()),
            FieldSpec::Prime { .. } => {
                Err(Error::RootUnavailable { order: m, field: self.to_string() })
            }
        }
    }
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        self.spec == other.spec
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.spec {
            FieldSpec::Cyclotomic { conductor } => write!(f, "Q(z_{conductor})"),
            FieldSpec::Prime { modulus, root_order } => {
                write!(f, "F_{modulus} (z_{root_order} = {})", self.root)
            }
        }
    }
}
