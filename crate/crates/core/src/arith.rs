//! Integer number theory used by the local invariants: primality,
//! factorization, square classes, valuations and Legendre symbols.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

const SMALL_PRIMES: [u32; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];

/// Miller–Rabin with the first twelve prime bases.
///
/// Deterministic below 3.3·10²⁴, which covers every input this crate is
/// meant for; above that bound it is a strong probable-prime test.
pub fn is_prime(n: &BigUint) -> bool {
    let two = BigUint::from(2u32);
    if *n < two {
        return false;
    }
    for &p in &SMALL_PRIMES {
        let p = BigUint::from(p);
        if *n == p {
            return true;
        }
        if (n % &p).is_zero() {
            return false;
        }
    }
    let n_minus_one = n - 1u32;
    let mut d = n_minus_one.clone();
    let mut s = 0u32;
    while d.is_even() {
        d >>= 1;
        s += 1;
    }
    'bases: for &a in &SMALL_PRIMES {
        let mut x = BigUint::from(a).modpow(&d, n);
        if x.is_one() || x == n_minus_one {
            continue;
        }
        for _ in 1..s {
            x = (&x * &x) % n;
            if x == n_minus_one {
                continue 'bases;
            }
        }
        return false;
    }
    true
}

/// Prime factorization of `n > 0` as `(prime, exponent)` pairs in ascending order.
///
/// Trial division, stopping early once the cofactor passes [`is_prime`].
pub fn factorize(n: &BigUint) -> Vec<(BigUint, u32)> {
    assert!(!n.is_zero(), "cannot factor zero");
    let mut out = Vec::new();
    let mut rest = n.clone();
    let mut d = BigUint::from(2u32);
    let mut rest_is_prime = is_prime(&rest);
    while !rest.is_one() {
        if rest_is_prime || &d * &d > rest {
            out.push((rest, 1));
            break;
        }
        let mut e = 0;
        while (&rest % &d).is_zero() {
            rest /= &d;
            e += 1;
        }
        if e > 0 {
            out.push((d.clone(), e));
            rest_is_prime = is_prime(&rest);
        }
        d += if d == BigUint::from(2u32) { 1u32 } else { 2u32 };
    }
    out
}

/// Distinct prime divisors of a nonzero integer.
pub fn prime_divisors(n: &BigInt) -> Vec<BigUint> {
    factorize(n.magnitude())
        .into_iter()
        .map(|(p, _)| p)
        .collect()
}

/// Signed squarefree part of a nonzero integer: the representative of its
/// square class.
pub fn squarefree_part(n: &BigInt) -> BigInt {
    assert!(!n.is_zero(), "zero has no square class");
    let mut core = BigUint::one();
    for (p, e) in factorize(n.magnitude()) {
        if e % 2 == 1 {
            core *= p;
        }
    }
    BigInt::from_biguint(n.sign(), core)
}

/// Square class of a nonzero rational as a signed squarefree integer.
///
/// `n/d` and `n·d` differ by the square `d²`.
pub fn square_class(q: &BigRational) -> BigInt {
    squarefree_part(&(q.numer() * q.denom()))
}

/// Integer in the square class of a nonzero rational (not necessarily squarefree).
pub fn integral_representative(q: &BigRational) -> BigInt {
    q.numer() * q.denom()
}

/// `(v_p(n), n / p^{v_p(n)})` for nonzero `n`.
pub fn split_valuation(n: &BigInt, p: &BigInt) -> (u32, BigInt) {
    assert!(!n.is_zero());
    let mut v = 0;
    let mut u = n.clone();
    loop {
        let (q, r) = u.div_rem(p);
        if !r.is_zero() {
            break;
        }
        u = q;
        v += 1;
    }
    (v, u)
}

/// Legendre symbol `(a/p)` for an odd prime `p`, in `{-1, 0, 1}`.
pub fn legendre(a: &BigInt, p: &BigInt) -> i8 {
    let r = a.mod_floor(p);
    if r.is_zero() {
        return 0;
    }
    let e = (p - 1u32) >> 1;
    let t = r.modpow(&e, p);
    if t.is_one() {
        1
    } else {
        -1
    }
}

/// Residue of `n` modulo a small positive modulus, in `[0, m)`.
pub fn small_residue(n: &BigInt, m: u32) -> u32 {
    n.mod_floor(&BigInt::from(m))
        .to_u32()
        .expect("residue fits")
}

/// Integer `k`-th root of `n >= 0` if `n` is a perfect `k`-th power.
pub fn exact_root(n: &BigUint, k: u32) -> Option<BigUint> {
    let r = num_integer::Roots::nth_root(n, k);
    (num_traits::pow(r.clone(), k as usize) == *n).then_some(r)
}

/// Exact signed `k`-th root of an integer, if it exists.
pub fn exact_signed_root(n: &BigInt, k: u32) -> Option<BigInt> {
    if n.is_negative() && k % 2 == 0 {
        return None;
    }
    let r = BigInt::from(exact_root(n.magnitude(), k)?);
    Some(if n.is_negative() { -r } else { r })
}
