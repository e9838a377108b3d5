//! Arithmetic in small finite fields GF(p^k).
//!
//! Elements are the integers `0..q` where an integer encodes the coefficient
//! vector of a polynomial of degree `< k` in base `p` (the constant term is the
//! least significant digit). Multiplication goes through exp/log tables built
//! from a fixed primitive reduction polynomial, so `x` (encoded as `p`) is
//! always a generator of the multiplicative group when `k > 1`.

use thiserror::Error;

use crate::field_table::REDUCTION_POLYNOMIALS;

/// Largest field order accepted by [`Field::new`].
pub const MAX_ORDER: u32 = 8192;

/// Up to this order addition uses a full lookup table.
const ADD_TABLE_LIMIT: u32 = 256;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("{0} is not prime")]
    NotPrime(u32),
    #[error("GF({p}^{k}) is not supported")]
    Unsupported { p: u32, k: u32 },
    #[error("division by zero")]
    DivisionByZero,
    #[error("element {element} out of range for GF({order})")]
    OutOfRange { element: u32, order: u32 },
}

pub type Element = u32;

pub fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Splits `q` into `(p, k)` with `q = p^k`, if `q` is a prime power.
pub fn prime_power(q: u32) -> Option<(u32, u32)> {
    if q < 2 {
        return None;
    }
    let p = (2..=q).find(|d| q.is_multiple_of(*d))?;
    let mut rest = q;
    let mut k = 0;
    while rest.is_multiple_of(p) {
        rest /= p;
        k += 1;
    }
    (rest == 1).then_some((p, k))
}

#[derive(Debug, Clone)]
pub struct Field {
    p: u32,
    k: u32,
    q: u32,
    /// Low coefficients `c0..c_{k-1}` of the monic reduction polynomial.
    poly: Vec<u32>,
    /// `exp[i] = g^i` for `i < 2(q-1)`, doubled to skip a modulo in `mul`.
    exp: Vec<u32>,
    /// `log[a]` for nonzero `a`; `log[0]` is unused.
    log: Vec<u32>,
    add: Option<Vec<u32>>,
    neg: Vec<u32>,
}

impl Field {
    pub fn new(p: u32, k: u32) -> Result<Self, FieldError> {
        if !is_prime(p) {
            return Err(FieldError::NotPrime(p));
        }
        let unsupported = FieldError::Unsupported { p, k };
        if k == 0 {
            return Err(unsupported);
        }
        let q = p
            .checked_pow(k)
            .filter(|&q| q <= MAX_ORDER)
            .ok_or(unsupported.clone())?;
        let poly = if k == 1 {
            // x - g for the smallest primitive root g, so that "x" is g.
            let g = (1..p)
                .find(|&g| multiplicative_order_mod(g, p) == p - 1)
                .ok_or(unsupported.clone())?;
            vec![(p - g) % p]
        } else {
            REDUCTION_POLYNOMIALS
                .iter()
                .find(|&&(pp, kk, _)| pp == p && kk == k)
                .map(|&(_, _, c)| c.to_vec())
                .ok_or(unsupported.clone())?
        };

        let mut field = Field {
            p,
            k,
            q,
            poly,
            exp: Vec::new(),
            log: vec![0; q as usize],
            add: None,
            neg: Vec::new(),
        };
        field.neg = (0..q)
            .map(|a| field.digitwise(a, 0, |x, _| (p - x) % p))
            .collect();
        if q <= ADD_TABLE_LIMIT {
            let mut table = Vec::with_capacity((q * q) as usize);
            for a in 0..q {
                for b in 0..q {
                    table.push(field.digitwise(a, b, |x, y| (x + y) % p));
                }
            }
            field.add = Some(table);
        }

        let n = (q - 1) as usize;
        let mut exp = Vec::with_capacity(2 * n);
        let mut seen = vec![false; q as usize];
        let mut cur = 1;
        for i in 0..n {
            if seen[cur as usize] {
                return Err(unsupported);
            }
            seen[cur as usize] = true;
            exp.push(cur);
            field.log[cur as usize] = i as u32;
            cur = field.times_x(cur);
        }
        if cur != 1 {
            return Err(unsupported);
        }
        let tail = exp.clone();
        exp.extend(tail);
        field.exp = exp;
        Ok(field)
    }

    /// Field of order `q`, for `q` a supported prime power.
    pub fn with_order(q: u32) -> Result<Self, FieldError> {
        let (p, k) = prime_power(q).ok_or(FieldError::NotPrime(q))?;
        Self::new(p, k)
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.k
    }

    pub fn order(&self) -> u32 {
        self.q
    }

    /// Full coefficient list `c0, .., c_{k-1}, 1` of the reduction polynomial.
    pub fn reduction_polynomial(&self) -> Vec<u32> {
        let mut c = self.poly.clone();
        c.push(1);
        c
    }

    /// Human readable form of the reduction polynomial, e.g. `x^2 + x + 1`.
    pub fn reduction_polynomial_string(&self) -> String {
        let coeffs = self.reduction_polynomial();
        let mut terms = Vec::new();
        for (i, &c) in coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            let mono = match i {
                0 => String::new(),
                1 => "x".to_string(),
                _ => format!("x^{i}"),
            };
            terms.push(match (c, i) {
                (_, 0) => c.to_string(),
                (1, _) => mono,
                _ => format!("{c}{mono}"),
            });
        }
        terms.join(" + ")
    }

    pub fn elements(&self) -> impl Iterator<Item = Element> {
        0..self.q
    }

    /// The generator `g` with `exp[i] = g^i`.
    pub fn generator(&self) -> Element {
        self.exp[1 % self.exp.len()]
    }

    pub fn check(&self, a: Element) -> Result<Element, FieldError> {
        if a < self.q {
            Ok(a)
        } else {
            Err(FieldError::OutOfRange {
                element: a,
                order: self.q,
            })
        }
    }

    #[inline]
    pub fn add(&self, a: Element, b: Element) -> Element {
        debug_assert!(a < self.q && b < self.q);
        match &self.add {
            Some(t) => t[(a * self.q + b) as usize],
            None if self.p == 2 => a ^ b,
            None => self.digitwise(a, b, |x, y| (x + y) % self.p),
        }
    }

    #[inline]
    pub fn neg(&self, a: Element) -> Element {
        self.neg[a as usize]
    }

    #[inline]
    pub fn sub(&self, a: Element, b: Element) -> Element {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: Element, b: Element) -> Element {
        debug_assert!(a < self.q && b < self.q);
        if a == 0 || b == 0 {
            return 0;
        }
        self.exp[(self.log[a as usize] + self.log[b as usize]) as usize]
    }

    pub fn inv(&self, a: Element) -> Result<Element, FieldError> {
        self.check(a)?;
        if a == 0 {
            return Err(FieldError::DivisionByZero);
        }
        let n = self.q - 1;
        Ok(self.exp[((n - self.log[a as usize]) % n) as usize])
    }

    pub fn div(&self, a: Element, b: Element) -> Result<Element, FieldError> {
        self.check(a)?;
        Ok(self.mul(a, self.inv(b)?))
    }

    pub fn pow(&self, a: Element, e: u64) -> Element {
        if e == 0 {
            return 1;
        }
        if a == 0 {
            return 0;
        }
        let n = u64::from(self.q - 1);
        let idx = (u64::from(self.log[a as usize]) * (e % n)) % n;
        self.exp[idx as usize]
    }

    /// The Frobenius map `a -> a^p`.
    pub fn frobenius(&self, a: Element) -> Element {
        self.pow(a, u64::from(self.p))
    }

    /// Elements fixed by `a -> a^s`, i.e. the subfield of order `s` when `s`
    /// is a power of `p` whose exponent divides `k`.
    pub fn subfield(&self, s: u32) -> Vec<Element> {
        self.elements()
            .filter(|&a| self.pow(a, u64::from(s)) == a)
            .collect()
    }

    /// Multiplicative order of a nonzero element.
    pub fn multiplicative_order(&self, a: Element) -> Result<u32, FieldError> {
        self.check(a)?;
        if a == 0 {
            return Err(FieldError::DivisionByZero);
        }
        let n = self.q - 1;
        Ok(n / gcd(n, self.log[a as usize]))
    }

    fn digits(&self, mut a: u32) -> Vec<u32> {
        (0..self.k)
            .map(|_| {
                let d = a % self.p;
                a /= self.p;
                d
            })
            .collect()
    }

    fn undigits(&self, digits: &[u32]) -> u32 {
        digits.iter().rev().fold(0, |acc, &d| acc * self.p + d)
    }

    fn digitwise(&self, a: u32, b: u32, f: impl Fn(u32, u32) -> u32) -> u32 {
        let (da, db) = (self.digits(a), self.digits(b));
        let out: Vec<u32> = da.iter().zip(&db).map(|(&x, &y)| f(x, y)).collect();
        self.undigits(&out)
    }

    /// Multiply by `x` and reduce: `x^k = -(c0 + c1 x + ...)`.
    fn times_x(&self, a: u32) -> u32 {
        let d = self.digits(a);
        let top = d[self.k as usize - 1];
        let mut out = vec![0; self.k as usize];
        for i in (1..self.k as usize).rev() {
            out[i] = d[i - 1];
        }
        for (o, &c) in out.iter_mut().zip(&self.poly) {
            *o = (*o + (self.p - (top * c) % self.p)) % self.p;
        }
        self.undigits(&out)
    }
}

fn gcd(a: u32, b: u32) -> u32 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn multiplicative_order_mod(g: u32, p: u32) -> u32 {
    let mut x = g % p;
    let mut n = 1;
    while x != 1 {
        x = x * g % p;
        n += 1;
        if n > p {
            return 0;
        }
    }
    n
}
