//! Characters of split commutative semisimple algebras.
//!
//! A separating element `z` is drawn at random; the roots of its minimal
//! polynomial are located exactly (exhaustively over `F_p`, by `p`-adic
//! lifting and rational reconstruction over `Q`) and each eigenline of
//! `L_z` yields one character.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

use crate::algebra::StructureConstantAlgebra;
use crate::error::{Error, Result};
use crate::linalg::{EchelonBasis, Matrix};
use crate::scalars::{is_prime, Field, FieldSpec, Rational, Scalar};

const ATTEMPTS: usize = 32;

/// Monic minimal polynomial of `z`, coefficients from degree 0 upwards.
pub fn minimal_polynomial(alg: &StructureConstantAlgebra, z: &[Scalar]) -> Vec<Scalar> {
    let mut basis = EchelonBasis::new(alg.dim());
    let mut powers: Vec<Vec<Scalar>> = Vec::new();
    let mut current = alg.unit().to_vec();
    loop {
        if !basis.insert(current.clone()) {
            let m = Matrix::from_fn(alg.dim(), powers.len(), |i, j| powers[j][i].clone());
            let c = m.solve(&current).expect("dependent power lies in the span");
            let mut poly: Vec<Scalar> = c.iter().map(|x| -x).collect();
            poly.push(alg.one().clone());
            return poly;
        }
        powers.push(current.clone());
        current = alg.mul(z, &current);
    }
}

/// All roots of `poly` lying in `field`.
pub fn roots_in_field(poly: &[Scalar], field: &Field) -> Result<Vec<Scalar>> {
    match field.spec() {
        FieldSpec::Prime { modulus, .. } => {
            let coeffs: Vec<Scalar> = poly.iter().map(|c| field.reduce(c)).collect::<Result<_>>()?;
            let mut roots = Vec::new();
            for r in 0..modulus {
                let x = field.from_int(r as i64);
                let value = coeffs.iter().rev().fold(field.zero(), |acc, c| &(&acc * &x) + c);
                if value.is_zero() {
                    roots.push(x);
                }
            }
            Ok(roots)
        }
        FieldSpec::Cyclotomic { .. } => {
            let rational: Option<Vec<Rational>> = poly.iter().map(|c| c.as_rational()).collect();
            let rational = rational.ok_or_else(|| {
                Error::Splitting("minimal polynomial has irrational coefficients".into())
            })?;
            Ok(rational_roots(&rational).into_iter().map(Scalar::from_rational).collect())
        }
    }
}

fn eval_mod(coeffs: &[u64], x: u64, p: u64) -> u64 {
    coeffs.iter().rev().fold(0u64, |acc, &c| ((acc as u128 * x as u128 + c as u128) % p as u128) as u64)
}

fn trim(mut f: Vec<u64>) -> Vec<u64> {
    while f.last() == Some(&0) {
        f.pop();
    }
    f
}

fn poly_rem_mod(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut r = a.to_vec();
    let lead_inv = crate::scalars::inv_mod(*b.last().unwrap(), p).unwrap();
    while r.len() >= b.len() {
        let lead = *r.last().unwrap();
        if lead != 0 {
            let f = crate::scalars::mul_mod(lead, lead_inv, p);
            let shift = r.len() - b.len();
            for (i, &bi) in b.iter().enumerate() {
                r[shift + i] = (r[shift + i] + p - crate::scalars::mul_mod(f, bi, p)) % p;
            }
        }
        r.pop();
    }
    trim(r)
}

/// Whether `f` mod `p` has no repeated factor.
fn squarefree_mod(f: &[u64], p: u64) -> bool {
    let df: Vec<u64> = trim(f.iter().enumerate().skip(1).map(|(i, &c)| crate::scalars::mul_mod(c, i as u64 % p, p)).collect());
    if df.is_empty() {
        return f.len() <= 1;
    }
    let (mut a, mut b) = (f.to_vec(), df);
    while !b.is_empty() {
        let r = poly_rem_mod(&a, &b, p);
        a = b;
        b = r;
    }
    a.len() == 1
}

fn eval_big(coeffs: &[BigInt], x: &BigInt, m: &BigInt) -> BigInt {
    coeffs.iter().rev().fold(BigInt::zero(), |acc, c| (acc * x + c).mod_floor(m))
}

fn mod_inverse(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    let e = a.mod_floor(m).extended_gcd(m);
    if e.gcd.is_one() {
        Some(e.x.mod_floor(m))
    } else {
        None
    }
}

/// `u/v ≡ r (mod m)` with `|u|, v ≤ sqrt(m/2)`, if one exists.
fn rational_reconstruction(r: &BigInt, m: &BigInt) -> Option<BigRational> {
    let bound = (m / BigInt::from(2)).sqrt();
    let (mut r0, mut r1) = (m.clone(), r.mod_floor(m));
    let (mut t0, mut t1) = (BigInt::zero(), BigInt::one());
    while r1 > bound {
        let q = &r0 / &r1;
        let r2 = &r0 - &q * &r1;
        let t2 = &t0 - &q * &t1;
        r0 = core::mem::replace(&mut r1, r2);
        t0 = core::mem::replace(&mut t1, t2);
    }
    if t1.is_zero() || t1.abs() > bound {
        return None;
    }
    Some(BigRational::new(r1, t1))
}

/// Distinct rational roots of a polynomial with rational coefficients.
pub fn rational_roots(poly: &[Rational]) -> Vec<Rational> {
    let mut big: Vec<BigRational> = poly.iter().map(|c| c.to_big()).collect();
    while big.last().is_some_and(|c| c.is_zero()) {
        big.pop();
    }
    let mut roots = Vec::new();
    if big.len() <= 1 {
        return roots;
    }
    if big[0].is_zero() {
        roots.push(Rational::from_int(0));
        while big.first().is_some_and(|c| c.is_zero()) {
            big.remove(0);
        }
    }
    if big.len() <= 1 {
        return roots;
    }
    let lcm = big.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<BigInt> = big.iter().map(|c| (c * BigRational::from_integer(lcm.clone())).to_integer()).collect();
    let lead = ints.last().unwrap().abs();
    let tail = ints[0].abs();
    let target = BigInt::from(2) * &lead * &tail * &lead * &tail + BigInt::one();

    let mut p = 3u64;
    let chosen = loop {
        if p > 1_000_000 {
            return roots;
        }
        if is_prime(p) {
            let pb = BigInt::from(p);
            let reduced: Vec<u64> = ints
                .iter()
                .map(|c| num_traits::ToPrimitive::to_u64(&c.mod_floor(&pb)).unwrap())
                .collect();
            if reduced.last() != Some(&0) && squarefree_mod(&reduced, p) {
                break (p, reduced);
            }
        }
        p += 2;
    };
    let (p, reduced) = chosen;
    let derivative: Vec<BigInt> = ints.iter().enumerate().skip(1).map(|(i, c)| c * BigInt::from(i)).collect();
    for r in 0..p {
        if eval_mod(&reduced, r, p) != 0 {
            continue;
        }
        let mut m = BigInt::from(p);
        let mut x = BigInt::from(r);
        while m < target {
            let m2 = &m * &m;
            let fx = eval_big(&ints, &x, &m2);
            let dfx = eval_big(&derivative, &x, &m2);
            let inv = mod_inverse(&dfx, &m2).expect("simple root modulo p");
            x = (&x - fx * inv).mod_floor(&m2);
            m = m2;
        }
        if let Some(q) = rational_reconstruction(&x, &m) {
            let value = big.iter().rev().fold(BigRational::zero(), |acc, c| acc * &q + c);
            if value.is_zero() {
                roots.push(Rational::from_big(q));
            }
        }
    }
    roots.sort_by_key(|r| r.to_big());
    roots.dedup();
    roots
}

fn random_element(field: &Field, dim: usize, rng: &mut ChaCha8Rng) -> Vec<Scalar> {
    (0..dim).map(|_| field.from_int((rng.next_u32() % 7) as i64 - 3)).collect()
}

/// All algebra maps `alg -> field`, as value vectors on the basis.
///
/// Fails with [`Error::Splitting`] when `alg` is not commutative, not
/// separable by a random element, or not split over `field`.
pub fn characters(alg: &StructureConstantAlgebra, field: &Field, seed: u64) -> Result<Vec<Vec<Scalar>>> {
    if !alg.is_commutative() {
        return Err(Error::Splitting("algebra is not commutative".into()));
    }
    let n = alg.dim();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..ATTEMPTS {
        let z = random_element(field, n, &mut rng);
        let poly = minimal_polynomial(alg, &z);
        if poly.len() - 1 < n {
            continue;
        }
        let roots = roots_in_field(&poly, field)?;
        if roots.len() < n {
            return Err(Error::Splitting(format!(
                "only {} of {n} eigenvalues lie in {field}",
                roots.len()
            )));
        }
        let lz = alg.left_matrix(&z);
        let mut chars = Vec::with_capacity(n);
        for lambda in &roots {
            let shifted = lz.sub(&Matrix::identity(n, &field.one()).scale(lambda));
            let kernel = shifted.nullspace();
            if kernel.len() != 1 {
                return Err(Error::Splitting("eigenspace is not a line".into()));
            }
            let e = &kernel[0];
            let j = e.iter().position(|c| !c.is_zero()).expect("nonzero kernel vector");
            let inv = e[j].inv()?;
            let chi: Vec<Scalar> = (0..n)
                .map(|i| {
                    let mut basis = vec![field.zero(); n];
                    basis[i] = field.one();
                    &alg.mul(&basis, e)[j] * &inv
                })
                .collect();
            chars.push(chi);
        }
        return Ok(chars);
    }
    Err(Error::Splitting("no separating element found".into()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn functions_on(n: usize) -> StructureConstantAlgebra {
        let labels = (0..n).map(|i| format!("d{i}")).collect();
        let table = (0..n * n)
            .map(|k| if k / n == k % n { vec![(k / n, Scalar::one())] } else { vec![] })
            .collect();
        StructureConstantAlgebra::new(labels, table, vec![Scalar::one(); n], Scalar::one()).unwrap()
    }

    #[test]
    fn rational_roots_of_split_cubic() {
        // (3t - 1)(t + 2)(7t - 5)
        let p = [10, -39, 20, 21].map(|c| Rational::from_int(c));
        let mut roots = rational_roots(&p);
        roots.sort_by_key(|r| r.to_big());
        assert_eq!(roots, vec![Rational::from_int(-2), Rational::new(1, 3), Rational::new(5, 7)]);
    }

    #[test]
    fn irrational_roots_are_skipped() {
        let p = [-2, 0, 1].map(|c| Rational::from_int(c));
        assert!(rational_roots(&p).is_empty());
        let p = [0, -2, 0, 1].map(|c| Rational::from_int(c));
        assert_eq!(rational_roots(&p), vec![Rational::from_int(0)]);
    }

    #[test]
    fn large_rational_roots() {
        let a = Rational::new(123456789, 98765431);
        let b = Rational::new(-5, 1234567);
        // t^2 - (a+b) t + ab
        let sum = a.to_big() + b.to_big();
        let prod = a.to_big() * b.to_big();
        let p = [Rational::from_big(prod), Rational::from_big(-sum), Rational::from_int(1)];
        let roots = rational_roots(&p);
        assert_eq!(roots.len(), 2);
        assert!(roots.contains(&a) && roots.contains(&b));
    }

    #[test]
    fn characters_of_function_algebra() {
        let alg = functions_on(4);
        let chars = characters(&alg, &Field::rationals(), 1).unwrap();
        assert_eq!(chars.len(), 4);
        for chi in &chars {
            assert_eq!(chi.iter().filter(|c| c.is_one()).count(), 1);
        }
    }

    #[test]
    fn characters_over_prime_field() {
        let alg = functions_on(3);
        let f = Field::prime(7, 1).unwrap();
        assert_eq!(characters(&alg, &f, 3).unwrap().len(), 3);
    }

    #[test]
    fn non_split_algebra_errors() {
        // Q[t]/(t^2 - 2) with basis 1, t.
        let table = vec![
            vec![(0, Scalar::one())],
            vec![(1, Scalar::one())],
            vec![(1, Scalar::one())],
            vec![(0, Scalar::from_int(2))],
        ];
        let alg = StructureConstantAlgebra::new(
            vec!["1".into(), "t".into()],
            table,
            vec![Scalar::one(), Scalar::zero()],
            Scalar::one(),
        )
        .unwrap();
        assert!(matches!(characters(&alg, &Field::rationals(), 0), Err(Error::Splitting(_))));
    }
}
