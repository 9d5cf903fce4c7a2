//! Finite fields GF(p^e) with q <= 2^14, by log/antilog tables.
//!
//! Elements are coded as integers `0..q`: the code of `sum a_i x^i` is `sum a_i p^i`.
//! The defining modulus is primitive, so `x` (code `p`, or the least primitive root
//! when e = 1) generates the multiplicative group.

use crate::error::{Error, Result};

pub type Elem = u32;

pub const MAX_FIELD_ORDER: u64 = 1 << 14;

#[derive(Clone, Debug)]
pub struct Field {
    p: u32,
    e: u32,
    q: u32,
    modulus: Vec<u32>,
    exp: Vec<Elem>,
    log: Vec<u32>,
}

/// Factor q as p^e; None if q is not a prime power.
pub fn prime_power(q: u64) -> Option<(u32, u32)> {
    if q < 2 {
        return None;
    }
    let mut p = 2u64;
    while p * p <= q && q % p != 0 {
        p += 1;
    }
    if q % p != 0 {
        p = q;
    }
    let mut e = 0;
    let mut r = q;
    while r % p == 0 {
        r /= p;
        e += 1;
    }
    if r == 1 {
        Some((p as u32, e))
    } else {
        None
    }
}

fn prime_factors(mut m: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= m {
        if m % d == 0 {
            out.push(d);
            while m % d == 0 {
                m /= d;
            }
        }
        d += 1;
    }
    if m > 1 {
        out.push(m);
    }
    out
}

/// Multiply by x modulo a monic polynomial, on coefficient vectors of length e.
fn times_x(v: &mut [u32], modulus: &[u32], p: u32) {
    let e = v.len();
    let top = v[e - 1];
    for i in (1..e).rev() {
        v[i] = v[i - 1];
    }
    v[0] = 0;
    if top != 0 {
        for i in 0..e {
            v[i] = (v[i] + p - (top * modulus[i]) % p) % p;
        }
    }
}

fn code(v: &[u32], p: u32) -> u32 {
    v.iter().rev().fold(0, |acc, &c| acc * p + c)
}

/// True when the class of x has multiplicative order p^e - 1 modulo the monic
/// polynomial `modulus` (coefficients low to high, length e + 1). This forces the
/// polynomial to be irreducible as well.
pub fn is_primitive_modulus(p: u32, modulus: &[u32]) -> bool {
    let e = modulus.len() - 1;
    if e == 0 || modulus[e] != 1 || modulus[0] == 0 {
        return false;
    }
    let q = (p as u64).pow(e as u32);
    let mut v = vec![0u32; e];
    v[0] = 1;
    let mut seen_one_at = 0u64;
    for i in 1..q {
        times_x(&mut v, modulus, p);
        if v[0] == 1 && v[1..].iter().all(|&c| c == 0) {
            seen_one_at = i;
            break;
        }
    }
    seen_one_at == q - 1
}

/// Irreducibility by trial division over all monic polynomials of degree <= e/2.
pub fn is_irreducible(p: u32, modulus: &[u32]) -> bool {
    let e = modulus.len() - 1;
    for d in 1..=e / 2 {
        let count = (p as u64).pow(d as u32);
        for c in 0..count {
            let mut div = vec![0u32; d + 1];
            let mut x = c;
            for slot in div.iter_mut().take(d) {
                *slot = (x % p as u64) as u32;
                x /= p as u64;
            }
            div[d] = 1;
            if poly_rem(modulus, &div, p).iter().all(|&r| r == 0) {
                return false;
            }
        }
    }
    true
}

fn inv_mod(a: u32, p: u32) -> u32 {
    let mut r = 1u64;
    let mut b = a as u64 % p as u64;
    let mut e = p as u64 - 2;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p as u64;
        }
        b = b * b % p as u64;
        e >>= 1;
    }
    r as u32
}

fn poly_rem(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    let lead_inv = inv_mod(b[db], p);
    while r.len() > db {
        let top = *r.last().unwrap();
        if top != 0 {
            let f = (top as u64 * lead_inv as u64 % p as u64) as u32;
            let shift = r.len() - 1 - db;
            for (i, &bc) in b.iter().enumerate() {
                let sub = (f as u64 * bc as u64 % p as u64) as u32;
                r[shift + i] = (r[shift + i] + p - sub) % p;
            }
        }
        r.pop();
    }
    r
}

/// Least primitive monic polynomial of degree e over GF(p), ordering candidates
/// by their coefficient code with the constant term least significant.
pub fn search_primitive_modulus(p: u32, e: u32) -> Vec<u32> {
    let count = (p as u64).pow(e);
    for c in 0..count {
        let mut m = vec![0u32; e as usize + 1];
        let mut x = c;
        for slot in m.iter_mut().take(e as usize) {
            *slot = (x % p as u64) as u32;
            x /= p as u64;
        }
        m[e as usize] = 1;
        if is_primitive_modulus(p, &m) {
            return m;
        }
    }
    unreachable!("primitive polynomials exist in every degree")
}

/// Bundled primitive moduli for the non-prime fields used by the catalog,
/// coefficients low to high. The table is checked against
/// `search_primitive_modulus` in the tests.
pub const BUNDLED_MODULI: &[(u32, u32, &[u32])] = include!("field_moduli.in");

fn bundled_modulus(p: u32, e: u32) -> Option<Vec<u32>> {
    BUNDLED_MODULI
        .iter()
        .find(|(bp, be, _)| *bp == p && *be == e)
        .map(|(_, _, m)| m.to_vec())
}

impl Field {
    pub fn new(q: u64) -> Result<Field> {
        let (p, e) = prime_power(q).ok_or(Error::UnsupportedField(q))?;
        if q > MAX_FIELD_ORDER {
            return Err(Error::UnsupportedField(q));
        }
        if e == 1 {
            return Field::with_modulus(p, &[0, 1]);
        }
        let m = bundled_modulus(p, e).ok_or(Error::UnsupportedField(q))?;
        Field::with_modulus(p, &m)
    }

    /// Build GF(p^e) from a primitive monic modulus of degree e. For e = 1 the
    /// modulus is ignored and the least primitive root is used.
    pub fn with_modulus(p: u32, modulus: &[u32]) -> Result<Field> {
        if prime_power(p as u64) != Some((p, 1)) {
            return Err(Error::UnsupportedField(p as u64));
        }
        let e = (modulus.len() - 1) as u32;
        let q64 = (p as u64).pow(e);
        if q64 > MAX_FIELD_ORDER || e == 0 {
            return Err(Error::UnsupportedField(q64));
        }
        let q = q64 as u32;
        let mut exp = vec![0u32; 2 * (q as usize - 1)];
        let mut log = vec![u32::MAX; q as usize];
        if e == 1 {
            let fac = prime_factors(q64 - 1);
            let g = (1..p.max(2))
                .find(|&g| {
                    let pw = |mut b: u64, mut k: u64| {
                        let mut r = 1u64;
                        b %= p as u64;
                        while k > 0 {
                            if k & 1 == 1 {
                                r = r * b % p as u64;
                            }
                            b = b * b % p as u64;
                            k >>= 1;
                        }
                        r
                    };
                    p == 2 || fac.iter().all(|&f| pw(g as u64, (q64 - 1) / f) != 1)
                })
                .unwrap_or(1);
            let mut x = 1u64;
            for i in 0..(q - 1) as usize {
                exp[i] = x as u32;
                log[x as usize] = i as u32;
                x = x * g as u64 % p as u64;
            }
        } else {
            if !is_primitive_modulus(p, modulus) {
                return Err(Error::InvalidArgument(format!(
                    "modulus {:?} is not primitive over GF({})",
                    modulus, p
                )));
            }
            let mut v = vec![0u32; e as usize];
            v[0] = 1;
            for i in 0..(q - 1) as usize {
                let c = code(&v, p);
                exp[i] = c;
                log[c as usize] = i as u32;
                times_x(&mut v, modulus, p);
            }
        }
        for i in 0..(q - 1) as usize {
            exp[i + (q - 1) as usize] = exp[i];
        }
        Ok(Field {
            p,
            e,
            q,
            modulus: modulus.to_vec(),
            exp,
            log,
        })
    }

    pub fn order(&self) -> u32 {
        self.q
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.e
    }

    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> {
        0..self.q
    }

    pub fn one(&self) -> Elem {
        1
    }

    /// Generator of the multiplicative group.
    pub fn primitive(&self) -> Elem {
        self.exp[1]
    }

    pub fn from_int(&self, i: i64) -> Elem {
        i.rem_euclid(self.p as i64) as Elem
    }

    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        if self.e == 1 {
            return (a + b) % self.p;
        }
        let (mut a, mut b) = (a, b);
        let mut out = 0;
        let mut place = 1;
        while a > 0 || b > 0 {
            out += ((a % self.p + b % self.p) % self.p) * place;
            a /= self.p;
            b /= self.p;
            place *= self.p;
        }
        out
    }

    pub fn neg(&self, a: Elem) -> Elem {
        if self.e == 1 {
            return (self.p - a) % self.p;
        }
        let mut a = a;
        let mut out = 0;
        let mut place = 1;
        while a > 0 {
            out += ((self.p - a % self.p) % self.p) * place;
            a /= self.p;
            place *= self.p;
        }
        out
    }

    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        if a == 0 || b == 0 {
            return 0;
        }
        self.exp[(self.log[a as usize] + self.log[b as usize]) as usize]
    }

    pub fn inv(&self, a: Elem) -> Option<Elem> {
        if a == 0 {
            return None;
        }
        let l = self.log[a as usize];
        Some(self.exp[((self.q - 1 - l) % (self.q - 1)) as usize])
    }

    pub fn div(&self, a: Elem, b: Elem) -> Option<Elem> {
        Some(self.mul(a, self.inv(b)?))
    }

    pub fn pow(&self, a: Elem, k: u64) -> Elem {
        if k == 0 {
            return 1;
        }
        if a == 0 {
            return 0;
        }
        let l = (self.log[a as usize] as u64 * (k % (self.q as u64 - 1))) % (self.q as u64 - 1);
        self.exp[l as usize]
    }

    /// Discrete log base `primitive()`.
    pub fn log(&self, a: Elem) -> Option<u32> {
        if a == 0 {
            None
        } else {
            Some(self.log[a as usize])
        }
    }

    pub fn exp(&self, i: u64) -> Elem {
        self.exp[(i % (self.q as u64 - 1)) as usize]
    }

    /// a^p.
    pub fn frobenius(&self, a: Elem) -> Elem {
        self.pow(a, self.p as u64)
    }

    pub fn is_square(&self, a: Elem) -> bool {
        a == 0 || self.p == 2 || self.log[a as usize] % 2 == 0
    }
}
