//! Elements of cyclotomic fields `Q(z_n)` in the power basis.

use alloc::borrow::Cow;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_integer::Integer;

use super::rational::Rational;

/// Conductor together with its cyclotomic polynomial.
#[derive(Debug)]
pub struct CycloCtx {
    pub n: u32,
    /// Coefficients of the monic polynomial `Phi_n`, lowest degree first.
    pub phi_poly: Vec<i64>,
}

impl CycloCtx {
    pub fn new(n: u32) -> Arc<CycloCtx> {
        assert!(n >= 1, "conductor must be positive");
        Arc::new(CycloCtx { n, phi_poly: cyclotomic_polynomial(n) })
    }

    pub fn degree(&self) -> usize {
        self.phi_poly.len() - 1
    }
}

/// `Phi_n` as `(x^n - 1) / prod_{d | n, d < n} Phi_d`.
pub fn cyclotomic_polynomial(n: u32) -> Vec<i64> {
    let n = n as usize;
    let mut p = vec![0i64; n + 1];
    p[0] = -1;
    p[n] = 1;
    for d in 1..n {
        if n % d == 0 {
            let q = cyclotomic_polynomial(d as u32);
            p = exact_div_monic(&p, &q);
        }
    }
    p
}

fn exact_div_monic(num: &[i64], den: &[i64]) -> Vec<i64> {
    let mut rem = num.to_vec();
    let dn = den.len() - 1;
    let qn = rem.len() - 1 - dn;
    let mut quot = vec![0i64; qn + 1];
    for k in (0..=qn).rev() {
        let c = rem[k + dn];
        quot[k] = c;
        if c != 0 {
            for (i, d) in den.iter().enumerate() {
                rem[k + i] -= c * d;
            }
        }
    }
    debug_assert!(rem.iter().all(|&r| r == 0));
    quot
}

/// An element of `Q(z_n)`; `ctx == None` marks a rational number.
///
/// Canonical form: coefficients reduced modulo `Phi_n`, trailing zeros
/// trimmed, and values with no irrational part carry no context.
#[derive(Clone)]
pub struct Cyclotomic {
    pub(crate) ctx: Option<Arc<CycloCtx>>,
    pub(crate) coeffs: Vec<Rational>,
}

impl Cyclotomic {
    pub fn zero() -> Self {
        Cyclotomic { ctx: None, coeffs: Vec::new() }
    }

    pub fn rational(r: Rational) -> Self {
        let coeffs = if r.is_zero() { Vec::new() } else { vec![r] };
        Cyclotomic { ctx: None, coeffs }
    }

    /// `z_n^k` inside `ctx`.
    pub fn root_power(ctx: &Arc<CycloCtx>, k: u64) -> Self {
        let e = (k % ctx.n as u64) as usize;
        let mut coeffs = vec![Rational::ZERO; e + 1];
        coeffs[e] = Rational::ONE;
        Self::from_poly(ctx.clone(), coeffs)
    }

    /// Builds a canonical element from an arbitrary polynomial in `z_n`.
    pub fn from_poly(ctx: Arc<CycloCtx>, mut coeffs: Vec<Rational>) -> Self {
        reduce_mod(&mut coeffs, &ctx.phi_poly);
        let mut out = Cyclotomic { ctx: Some(ctx), coeffs };
        out.normalize();
        out
    }

    fn normalize(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
        if self.coeffs.len() <= 1 {
            self.ctx = None;
        }
    }

    pub fn conductor(&self) -> u32 {
        self.ctx.as_ref().map_or(1, |c| c.n)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_rational(&self) -> bool {
        self.ctx.is_none()
    }

    pub fn as_rational(&self) -> Option<Rational> {
        if self.ctx.is_some() {
            return None;
        }
        Some(self.coeffs.first().cloned().unwrap_or(Rational::ZERO))
    }

    pub fn coefficients(&self) -> &[Rational] {
        &self.coeffs
    }

    /// Re-expresses `self` in `target`, whose conductor must be a multiple.
    pub fn promote(&self, target: &Arc<CycloCtx>) -> Vec<Rational> {
        let m = self.conductor();
        assert!(target.n % m == 0, "conductor {} does not divide {}", m, target.n);
        match &self.ctx {
            None => self.coeffs.clone(),
            Some(c) if c.n == target.n => self.coeffs.clone(),
            Some(_) => {
                let step = (target.n / m) as usize;
                let mut poly = vec![Rational::ZERO; (self.coeffs.len() - 1) * step + 1];
                for (j, c) in self.coeffs.iter().enumerate() {
                    poly[j * step] = c.clone();
                }
                reduce_mod(&mut poly, &target.phi_poly);
                poly
            }
        }
    }

    fn promoted(&self, target: &Arc<CycloCtx>) -> Cow<'_, [Rational]> {
        match &self.ctx {
            Some(c) if c.n != target.n => Cow::Owned(self.promote(target)),
            _ => Cow::Borrowed(&self.coeffs),
        }
    }

    fn common_ctx(&self, other: &Self) -> Option<Arc<CycloCtx>> {
        match (&self.ctx, &other.ctx) {
            (None, None) => None,
            (Some(a), None) => Some(a.clone()),
            (None, Some(b)) => Some(b.clone()),
            (Some(a), Some(b)) => {
                if a.n == b.n {
                    Some(a.clone())
                } else if a.n % b.n == 0 {
                    Some(a.clone())
                } else if b.n % a.n == 0 {
                    Some(b.clone())
                } else {
                    Some(CycloCtx::new(a.n.lcm(&b.n)))
                }
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        match self.common_ctx(other) {
            None => Self::rational(&self.coeffs[0] + &other.coeffs[0]),
            Some(ctx) => {
                let a = self.promoted(&ctx);
                let b = other.promoted(&ctx);
                let len = a.len().max(b.len());
                let mut out = Vec::with_capacity(len);
                for i in 0..len {
                    out.push(match (a.get(i), b.get(i)) {
                        (Some(x), Some(y)) => x + y,
                        (Some(x), None) => x.clone(),
                        (None, Some(y)) => y.clone(),
                        (None, None) => unreachable!(),
                    });
                }
                let mut r = Cyclotomic { ctx: Some(ctx), coeffs: out };
                r.normalize();
                r
            }
        }
    }

    /// In-place `self += other`, avoiding reallocation when the conductors
    /// agree or `other` is rational.
    pub fn add_assign(&mut self, other: &Self) {
        if other.is_zero() {
            return;
        }
        if self.is_zero() {
            *self = other.clone();
            return;
        }
        let same = match (&self.ctx, &other.ctx) {
            (_, None) => true,
            (Some(a), Some(b)) => a.n == b.n,
            (None, Some(_)) => false,
        };
        if !same {
            *self = self.add(other);
            return;
        }
        if self.coeffs.len() < other.coeffs.len() {
            self.coeffs.resize(other.coeffs.len(), Rational::ZERO);
        }
        for (x, y) in self.coeffs.iter_mut().zip(&other.coeffs) {
            if !y.is_zero() {
                *x = &*x + y;
            }
        }
        self.normalize();
    }

    pub fn neg(&self) -> Self {
        Cyclotomic { ctx: self.ctx.clone(), coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        if let Some(r) = self.as_rational() {
            return other.scale(&r);
        }
        if let Some(r) = other.as_rational() {
            return self.scale(&r);
        }
        let ctx = self.common_ctx(other).expect("irrational operands carry a context");
        let a = self.promoted(&ctx);
        let b = other.promoted(&ctx);
        let mut prod = vec![Rational::ZERO; a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if !y.is_zero() {
                    prod[i + j] = &prod[i + j] + &(x * y);
                }
            }
        }
        Self::from_poly(ctx, prod)
    }

    pub fn scale(&self, r: &Rational) -> Self {
        if r.is_zero() {
            return Self::zero();
        }
        Cyclotomic { ctx: self.ctx.clone(), coeffs: self.coeffs.iter().map(|c| c * r).collect() }
    }

    /// Inverse via the extended Euclidean algorithm against `Phi_n`.
    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let ctx = match &self.ctx {
            None => return Some(Self::rational(self.coeffs[0].recip()?)),
            Some(c) => c.clone(),
        };
        let modulus: Vec<Rational> = ctx.phi_poly.iter().map(|&c| Rational::from_int(c)).collect();
        let (g, s) = ext_gcd_left(self.coeffs.clone(), modulus);
        // g is a nonzero constant because Phi_n is irreducible.
        debug_assert_eq!(g.len(), 1);
        let g_inv = g[0].recip()?;
        let s: Vec<Rational> = s.iter().map(|c| c * &g_inv).collect();
        Some(Self::from_poly(ctx, s))
    }

    pub fn equals(&self, other: &Self) -> bool {
        if self.conductor() == other.conductor() {
            return self.coeffs == other.coeffs;
        }
        match self.common_ctx(other) {
            None => self.coeffs == other.coeffs,
            Some(ctx) => {
                let mut a = self.promote(&ctx);
                let mut b = other.promote(&ctx);
                trim(&mut a);
                trim(&mut b);
                a == b
            }
        }
    }
}

fn trim(p: &mut Vec<Rational>) {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
}

/// Reduces `poly` modulo the monic integer polynomial `modulus` in place.
fn reduce_mod(poly: &mut Vec<Rational>, modulus: &[i64]) {
    let d = modulus.len() - 1;
    if poly.len() > d {
        for k in (d..poly.len()).rev() {
            let c = core::mem::replace(&mut poly[k], Rational::ZERO);
            if c.is_zero() {
                continue;
            }
            for (i, m) in modulus[..d].iter().enumerate() {
                if *m != 0 {
                    let t = c.mul_int(*m);
                    poly[k - d + i] = &poly[k - d + i] - &t;
                }
            }
        }
        poly.truncate(d);
    }
    trim(poly);
}

fn poly_divrem(num: &[Rational], den: &[Rational]) -> (Vec<Rational>, Vec<Rational>) {
    let mut rem = num.to_vec();
    trim(&mut rem);
    let dn = den.len() - 1;
    if rem.len() < den.len() {
        return (Vec::new(), rem);
    }
    let lead_inv = den[dn].recip().expect("nonzero leading coefficient");
    let mut quot = vec![Rational::ZERO; rem.len() - dn];
    for k in (0..quot.len()).rev() {
        let c = &rem[k + dn] * &lead_inv;
        if !c.is_zero() {
            for (i, d) in den.iter().enumerate() {
                rem[k + i] = &rem[k + i] - &(&c * d);
            }
        }
        quot[k] = c;
    }
    rem.truncate(dn);
    trim(&mut rem);
    (quot, rem)
}

fn poly_mul(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![Rational::ZERO; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] = &out[i + j] + &(x * y);
        }
    }
    out
}

fn poly_sub(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let len = a.len().max(b.len());
    let mut out: Vec<Rational> = (0..len)
        .map(|i| {
            let x = a.get(i).cloned().unwrap_or(Rational::ZERO);
            let y = b.get(i).cloned().unwrap_or(Rational::ZERO);
            &x - &y
        })
        .collect();
    trim(&mut out);
    out
}

/// Returns `(g, s)` with `s * a == g (mod m)`.
fn ext_gcd_left(a: Vec<Rational>, m: Vec<Rational>) -> (Vec<Rational>, Vec<Rational>) {
    let (mut r0, mut r1) = (m, a);
    let (mut s0, mut s1): (Vec<Rational>, Vec<Rational>) = (Vec::new(), vec![Rational::ONE]);
    trim(&mut r1);
    while !r1.is_empty() {
        let (q, r) = poly_divrem(&r0, &r1);
        let s2 = poly_sub(&s0, &poly_mul(&q, &s1));
        r0 = core::mem::replace(&mut r1, r);
        s0 = core::mem::replace(&mut s1, s2);
    }
    (r0, s0)
}

impl fmt::Display for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "({c})")?,
                1 => write!(f, "({c})*z")?,
                _ => write!(f, "({c})*z^{k}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_cyclotomic_polynomials() {
        assert_eq!(cyclotomic_polynomial(1), vec![-1, 1]);
        assert_eq!(cyclotomic_polynomial(2), vec![1, 1]);
        assert_eq!(cyclotomic_polynomial(4), vec![1, 0, 1]);
        assert_eq!(cyclotomic_polynomial(6), vec![1, -1, 1]);
        assert_eq!(cyclotomic_polynomial(8), vec![1, 0, 0, 0, 1]);
        assert_eq!(cyclotomic_polynomial(12), vec![1, 0, -1, 0, 1]);
    }

    #[test]
    fn promotion_preserves_value() {
        let c4 = CycloCtx::new(4);
        let c12 = CycloCtx::new(12);
        let i = Cyclotomic::root_power(&c4, 1);
        let z12_cubed = Cyclotomic::root_power(&c12, 3);
        assert!(i.equals(&z12_cubed));
        assert_eq!(i.mul(&i).as_rational(), Some(Rational::from_int(-1)));
    }
}
