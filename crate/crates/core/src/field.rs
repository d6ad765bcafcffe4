//! Small finite fields `F_q` with Zech-logarithm arithmetic.
//!
//! An element is stored as the integer `Σ c_i p^i` of its coefficient vector
//! in `F_p[x]/(f)`, where `f` is a fixed primitive (Conway) polynomial. The
//! class of `x` is the primitive element `α`.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::{Error, Result};

pub type Elem = u32;

const NONE: u32 = u32::MAX;

/// Conway polynomials, coefficients from the constant term up, monic.
const CONWAY: &[(u32, u32, &[u32])] = &[
    (2, 1, &[1, 1]),
    (3, 1, &[1, 1]),
    (5, 1, &[3, 1]),
    (7, 1, &[4, 1]),
    (11, 1, &[9, 1]),
    (13, 1, &[11, 1]),
    (2, 2, &[1, 1, 1]),
    (2, 3, &[1, 1, 0, 1]),
    (2, 4, &[1, 1, 0, 0, 1]),
    (2, 5, &[1, 0, 1, 0, 0, 1]),
    (2, 6, &[1, 1, 0, 1, 1, 0, 1]),
    (2, 8, &[1, 0, 1, 1, 1, 0, 0, 0, 1]),
    (3, 2, &[2, 2, 1]),
    (3, 3, &[1, 2, 0, 1]),
    (3, 4, &[2, 0, 0, 2, 1]),
    (5, 2, &[2, 4, 1]),
    (5, 3, &[3, 3, 0, 1]),
    (7, 2, &[3, 6, 1]),
    (11, 2, &[2, 7, 1]),
    (13, 2, &[2, 12, 1]),
];

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fq {
    p: u32,
    e: u32,
    q: u32,
    modulus: Vec<u32>,
    exp: Vec<Elem>,
    log: Vec<u32>,
    zech: Vec<u32>,
}

fn is_prime(p: u32) -> bool {
    p >= 2 && (2..p).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

impl Fq {
    /// The field with `p^e` elements, for the tabulated `(p, e)`.
    pub fn new(p: u32, e: u32) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::InvalidArgument(format!("{p} is not prime")));
        }
        let modulus = CONWAY
            .iter()
            .find(|(pp, ee, _)| *pp == p && *ee == e)
            .map(|(_, _, m)| m.to_vec())
            .ok_or_else(|| Error::InvalidArgument(format!("no modulus tabulated for F_{{{p}^{e}}}")))?;
        let q = p.pow(e);
        let digits = |mut a: u32| -> Vec<u32> {
            let mut d = vec![0; e as usize];
            for c in d.iter_mut() {
                *c = a % p;
                a /= p;
            }
            d
        };
        let encode = |d: &[u32]| d.iter().rev().fold(0u32, |acc, &c| acc * p + c);
        // Powers of α by repeated multiplication by x modulo f.
        let mut exp = Vec::with_capacity(q as usize - 1);
        let mut log = vec![NONE; q as usize];
        let mut cur = vec![0u32; e as usize];
        cur[0] = 1;
        for k in 0..q - 1 {
            let a = encode(&cur);
            if log[a as usize] != NONE {
                return Err(Error::InvalidArgument(format!("modulus for F_{q} is not primitive")));
            }
            log[a as usize] = k;
            exp.push(a);
            let top = cur[e as usize - 1];
            let mut next = vec![0u32; e as usize];
            for i in (1..e as usize).rev() {
                next[i] = cur[i - 1];
            }
            for (i, n) in next.iter_mut().enumerate() {
                *n = (*n + (p - top * modulus[i] % p)) % p;
            }
            cur = next;
        }
        if encode(&cur) != 1 {
            return Err(Error::InvalidArgument(format!("modulus for F_{q} is not primitive")));
        }
        let add_digits = |a: u32, b: u32| {
            let (da, db) = (digits(a), digits(b));
            let s: Vec<u32> = da.iter().zip(&db).map(|(x, y)| (x + y) % p).collect();
            encode(&s)
        };
        let zech = (0..q - 1)
            .map(|k| {
                let s = add_digits(1, exp[k as usize]);
                if s == 0 {
                    NONE
                } else {
                    log[s as usize]
                }
            })
            .collect();
        let f = Fq { p, e, q, modulus, exp, log, zech };
        f.validate()?;
        Ok(f)
    }

    /// The field of order `q`, a tabulated prime power.
    pub fn of_order(q: u32) -> Result<Self> {
        for p in 2..=q {
            if is_prime(p) && q.is_multiple_of(p) {
                let mut e = 0;
                let mut r = q;
                while r.is_multiple_of(p) {
                    r /= p;
                    e += 1;
                }
                if r != 1 {
                    break;
                }
                return Fq::new(p, e);
            }
        }
        Err(Error::InvalidArgument(format!("{q} is not a prime power")))
    }

    fn validate(&self) -> Result<()> {
        let bad = |what: &str| Err(Error::InvalidArgument(format!("F_{}: {what}", self.q)));
        if self.exp.len() as u32 != self.q - 1 {
            return bad("unit group has the wrong order");
        }
        let limit = self.q.min(64);
        for a in 0..limit {
            for b in 0..limit {
                if self.frob(self.add(a, b)) != self.add(self.frob(a), self.frob(b)) {
                    return bad("Frobenius is not additive");
                }
                if self.add(a, b) != self.add(b, a) || self.sub(self.add(a, b), b) != a {
                    return bad("addition table is inconsistent");
                }
            }
        }
        Ok(())
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn e(&self) -> u32 {
        self.e
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    /// Coefficients of the defining polynomial from the constant term up.
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn zero(&self) -> Elem {
        0
    }

    pub fn one(&self) -> Elem {
        1
    }

    /// The primitive element `α`.
    pub fn primitive(&self) -> Elem {
        self.exp[1 % self.exp.len()]
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> {
        0..self.q
    }

    /// Image of an integer in the prime field.
    pub fn from_int(&self, n: i64) -> Elem {
        n.rem_euclid(self.p as i64) as Elem
    }

    pub fn exp(&self, k: u32) -> Elem {
        self.exp[(k % (self.q - 1)) as usize]
    }

    pub fn log(&self, a: Elem) -> Option<u32> {
        (a != 0).then(|| self.log[a as usize])
    }

    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        if a == 0 {
            return b;
        }
        if b == 0 {
            return a;
        }
        let n = self.q - 1;
        let (la, lb) = (self.log[a as usize], self.log[b as usize]);
        let z = self.zech[((lb + n - la) % n) as usize];
        if z == NONE {
            0
        } else {
            self.exp[((la + z) % n) as usize]
        }
    }

    pub fn neg(&self, a: Elem) -> Elem {
        if a == 0 || self.p == 2 {
            return a;
        }
        let n = self.q - 1;
        self.exp[((self.log[a as usize] + n / 2) % n) as usize]
    }

    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        if a == 0 || b == 0 {
            return 0;
        }
        self.exp[((self.log[a as usize] + self.log[b as usize]) % (self.q - 1)) as usize]
    }

    pub fn inv(&self, a: Elem) -> Option<Elem> {
        let n = self.q - 1;
        (a != 0).then(|| self.exp[((n - self.log[a as usize]) % n) as usize])
    }

    pub fn div(&self, a: Elem, b: Elem) -> Option<Elem> {
        self.inv(b).map(|bi| self.mul(a, bi))
    }

    pub fn pow(&self, a: Elem, k: u64) -> Elem {
        if k == 0 {
            return 1;
        }
        if a == 0 {
            return 0;
        }
        let n = (self.q - 1) as u64;
        self.exp[((self.log[a as usize] as u64 * (k % n)) % n) as usize]
    }

    /// `a ↦ a^p`.
    pub fn frob(&self, a: Elem) -> Elem {
        self.pow(a, self.p as u64)
    }

    pub fn is_square(&self, a: Elem) -> bool {
        a == 0 || self.p == 2 || self.log[a as usize].is_multiple_of(2)
    }

    /// An `F_p`-basis of the field: `1, α, …, α^{e−1}`.
    pub fn additive_basis(&self) -> Vec<Elem> {
        (0..self.e).map(|k| self.exp(k)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_tabulated_field_builds() {
        for &(p, e, _) in CONWAY {
            let f = Fq::new(p, e).unwrap();
            assert_eq!(f.q(), p.pow(e));
        }
        assert!(Fq::new(4, 1).is_err());
        assert!(Fq::new(2, 7).is_err());
        assert_eq!(Fq::of_order(9).unwrap().e(), 2);
        assert!(Fq::of_order(12).is_err());
    }

    #[test]
    fn field_axioms_f9() {
        let f = Fq::new(3, 2).unwrap();
        for a in f.elements() {
            assert_eq!(f.add(a, f.neg(a)), 0);
            if a != 0 {
                assert_eq!(f.mul(a, f.inv(a).unwrap()), 1);
            }
            for b in f.elements() {
                for c in f.elements() {
                    assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                    assert_eq!(f.add(a, f.add(b, c)), f.add(f.add(a, b), c));
                }
            }
        }
    }

    #[test]
    fn prime_field_matches_integers() {
        let f = Fq::new(7, 1).unwrap();
        for a in 0..7u32 {
            for b in 0..7u32 {
                assert_eq!(f.add(a, b), (a + b) % 7);
                assert_eq!(f.mul(a, b), (a * b) % 7);
            }
        }
        assert_eq!(f.primitive(), 3);
    }

    #[test]
    fn squares_are_half_the_units() {
        for q in [3u32, 5, 7, 9, 25] {
            let f = Fq::of_order(q).unwrap();
            let squares = f.elements().filter(|&a| a != 0 && f.is_square(a)).count() as u32;
            assert_eq!(squares, (q - 1) / 2);
            for a in f.elements() {
                assert!(f.is_square(f.mul(a, a)));
            }
        }
    }

    #[test]
    fn frobenius_has_order_e() {
        let f = Fq::new(2, 4).unwrap();
        for a in f.elements() {
            let mut b = a;
            for _ in 0..4 {
                b = f.frob(b);
            }
            assert_eq!(a, b);
        }
        assert!(f.elements().any(|a| f.frob(f.frob(a)) != a));
    }
}
