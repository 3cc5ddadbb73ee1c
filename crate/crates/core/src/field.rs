//! Arithmetic over GF(q) for small prime powers, and extension fields
//! GF(q^d) used by the Gabidulin construction.
//!
//! Base field elements are encoded as integers `0..q` by radix-p packing of
//! the polynomial coefficients: 0 is the zero element and 1 the
//! multiplicative identity.  All base-field operations are table lookups;
//! the tables for the eight supported orders are built once on first use.

use crate::error::{Error, Result};
use std::sync::OnceLock;

/// The field orders shipped with the crate.
pub const SUPPORTED_Q: [u16; 8] = [2, 3, 4, 5, 7, 8, 9, 16];

/// Fixed monic irreducible polynomial per extension field order, as
/// coefficient lists over GF(p) in ascending degree (Conway polynomials).
/// For prime q the element arithmetic is plain arithmetic mod p.
fn fixed_modulus(q: u16) -> Option<(u16, Vec<u8>)> {
    match q {
        2 | 3 | 5 | 7 => Some((q, vec![0, 1])),
        4 => Some((2, vec![1, 1, 1])),        // x^2 + x + 1
        8 => Some((2, vec![1, 1, 0, 1])),     // x^3 + x + 1
        9 => Some((3, vec![2, 2, 1])),        // x^2 + 2x + 2
        16 => Some((2, vec![1, 1, 0, 0, 1])), // x^4 + x + 1
        _ => None,
    }
}

struct Tables {
    q: u16,
    p: u16,
    e: u32,
    modulus: Vec<u8>,
    add: Vec<u8>,
    mul: Vec<u8>,
    neg: Vec<u8>,
    inv: Vec<u8>,
}

fn unpack(code: u8, p: u16, e: u32) -> Vec<u8> {
    let mut c = code as u16;
    let mut out = Vec::with_capacity(e as usize);
    for _ in 0..e {
        out.push((c % p) as u8);
        c /= p;
    }
    out
}

fn pack(coeffs: &[u8], p: u16) -> u8 {
    let mut acc: u16 = 0;
    for &c in coeffs.iter().rev() {
        acc = acc * p + c as u16;
    }
    acc as u8
}

fn build_tables(q: u16) -> Tables {
    let (p, modulus) = fixed_modulus(q).expect("supported q");
    let e = modulus.len() as u32 - 1;
    let qs = q as usize;
    let mut add = vec![0u8; qs * qs];
    let mut mul = vec![0u8; qs * qs];
    let mut neg = vec![0u8; qs];
    let mut inv = vec![0u8; qs];

    for a in 0..qs {
        let ca = unpack(a as u8, p, e);
        let cn: Vec<u8> = ca.iter().map(|&x| ((p - x as u16) % p) as u8).collect();
        neg[a] = pack(&cn, p);
        for b in 0..qs {
            let cb = unpack(b as u8, p, e);
            let cs: Vec<u8> = ca
                .iter()
                .zip(&cb)
                .map(|(&x, &y)| ((x as u16 + y as u16) % p) as u8)
                .collect();
            add[a * qs + b] = pack(&cs, p);
            // polynomial product reduced by the modulus
            let mut prod = vec![0u16; 2 * e as usize - 1];
            for (i, &x) in ca.iter().enumerate() {
                for (j, &y) in cb.iter().enumerate() {
                    prod[i + j] = (prod[i + j] + x as u16 * y as u16) % p;
                }
            }
            // reduce: x^e = -(modulus without leading term)
            for d in (e as usize..prod.len()).rev() {
                let coef = prod[d];
                if coef == 0 {
                    continue;
                }
                prod[d] = 0;
                for k in 0..e as usize {
                    let m = modulus[k] as u16;
                    let sub = (coef * m) % p;
                    prod[d - e as usize + k] = (prod[d - e as usize + k] + p - sub) % p;
                }
            }
            let red: Vec<u8> = prod[..e as usize].iter().map(|&x| x as u8).collect();
            mul[a * qs + b] = pack(&red, p);
        }
    }
    for a in 1..qs {
        for b in 1..qs {
            if mul[a * qs + b] == 1 {
                inv[a] = b as u8;
            }
        }
    }
    Tables {
        q,
        p,
        e,
        modulus,
        add,
        mul,
        neg,
        inv,
    }
}

static TABLES: OnceLock<Vec<Tables>> = OnceLock::new();

fn tables() -> &'static Vec<Tables> {
    TABLES.get_or_init(|| SUPPORTED_Q.iter().map(|&q| build_tables(q)).collect())
}

/// Handle to one of the supported base fields GF(q).  Cheap to copy; all
/// arithmetic is branch-free table lookup.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Gf {
    idx: u8,
}

impl Gf {
    pub fn new(q: u16) -> Result<Gf> {
        SUPPORTED_Q
            .iter()
            .position(|&s| s == q)
            .map(|idx| Gf { idx: idx as u8 })
            .ok_or(Error::UnsupportedField(q))
    }

    fn t(&self) -> &'static Tables {
        &tables()[self.idx as usize]
    }

    pub fn q(&self) -> u16 {
        self.t().q
    }

    pub fn p(&self) -> u16 {
        self.t().p
    }

    pub fn e(&self) -> u32 {
        self.t().e
    }

    /// Coefficients of the fixed irreducible modulus, ascending degree.
    pub fn modulus(&self) -> &'static [u8] {
        &self.t().modulus
    }

    #[inline]
    pub fn add(&self, a: u8, b: u8) -> u8 {
        let t = self.t();
        t.add[a as usize * t.q as usize + b as usize]
    }

    #[inline]
    pub fn sub(&self, a: u8, b: u8) -> u8 {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: u8, b: u8) -> u8 {
        let t = self.t();
        t.mul[a as usize * t.q as usize + b as usize]
    }

    #[inline]
    pub fn neg(&self, a: u8) -> u8 {
        self.t().neg[a as usize]
    }

    /// Multiplicative inverse; `a` must be nonzero.
    #[inline]
    pub fn inv(&self, a: u8) -> u8 {
        debug_assert!(a != 0, "inverse of zero");
        self.t().inv[a as usize]
    }

    pub fn pow(&self, a: u8, mut n: u64) -> u8 {
        let mut base = a;
        let mut acc = 1u8;
        while n > 0 {
            if n & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            n >>= 1;
        }
        acc
    }

    pub fn elements(&self) -> impl Iterator<Item = u8> {
        0..self.q() as u8
    }
}

/// An element of GF(q^d), stored as `d` base-field coefficient codes in
/// ascending degree of the fixed power basis.
pub type ExtEl = Vec<u8>;

/// GF(q^d) as polynomials over GF(q) modulo a fixed irreducible: the
/// lexicographically smallest monic irreducible of degree `d`, which makes
/// every downstream construction reproducible.
#[derive(Clone, Debug)]
pub struct ExtField {
    pub base: Gf,
    pub degree: usize,
    /// Monic modulus over GF(q), ascending, length `degree + 1`.
    pub modulus: Vec<u8>,
}

fn poly_deg(f: &[u8]) -> Option<usize> {
    f.iter().rposition(|&c| c != 0)
}

fn poly_rem(gf: Gf, a: &[u8], m: &[u8]) -> Vec<u8> {
    let mut r: Vec<u8> = a.to_vec();
    let dm = poly_deg(m).expect("nonzero modulus");
    let lead_inv = gf.inv(m[dm]);
    loop {
        match poly_deg(&r) {
            Some(dr) if dr >= dm => {
                let factor = gf.mul(r[dr], lead_inv);
                let shift = dr - dm;
                for k in 0..=dm {
                    let sub = gf.mul(factor, m[k]);
                    r[k + shift] = gf.sub(r[k + shift], sub);
                }
            }
            _ => break,
        }
    }
    r.truncate(dm);
    r.resize(dm, 0);
    r
}

fn poly_mulmod(gf: Gf, a: &[u8], b: &[u8], m: &[u8]) -> Vec<u8> {
    let mut prod = vec![0u8; a.len() + b.len()];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            if y == 0 {
                continue;
            }
            prod[i + j] = gf.add(prod[i + j], gf.mul(x, y));
        }
    }
    poly_rem(gf, &prod, m)
}

fn poly_powmod(gf: Gf, a: &[u8], mut n: u64, m: &[u8]) -> Vec<u8> {
    let dm = poly_deg(m).unwrap();
    let mut acc = vec![0u8; dm];
    acc[0] = 1;
    let mut base = poly_rem(gf, a, m);
    while n > 0 {
        if n & 1 == 1 {
            acc = poly_mulmod(gf, &acc, &base, m);
        }
        base = poly_mulmod(gf, &base, &base, m);
        n >>= 1;
    }
    acc
}

fn poly_gcd(gf: Gf, a: &[u8], b: &[u8]) -> Vec<u8> {
    let mut x = a.to_vec();
    let mut y = b.to_vec();
    loop {
        match poly_deg(&y) {
            None => return x,
            Some(_) => {
                let r = poly_rem(gf, &x, &pad_monic(gf, &y));
                x = y;
                y = r;
            }
        }
    }
}

fn pad_monic(_gf: Gf, f: &[u8]) -> Vec<u8> {
    let d = poly_deg(f).unwrap();
    f[..=d].to_vec()
}

/// Rabin irreducibility test for a monic polynomial over GF(q).
fn is_irreducible(gf: Gf, f: &[u8]) -> bool {
    let d = poly_deg(f).unwrap();
    if d == 0 {
        return false;
    }
    let q = gf.q() as u64;
    // x^(q^d) == x mod f
    let x = vec![0u8, 1];
    let mut y = poly_rem(gf, &x, f);
    for _ in 0..d {
        y = poly_powmod(gf, &y, q, f);
    }
    let xr = poly_rem(gf, &x, f);
    if y != xr {
        return false;
    }
    // gcd(x^(q^(d/l)) - x, f) must be constant for every prime l | d
    let mut primes = vec![];
    let mut dd = d;
    let mut c = 2;
    while c * c <= dd {
        if dd.is_multiple_of(c) {
            primes.push(c);
            while dd.is_multiple_of(c) {
                dd /= c;
            }
        }
        c += 1;
    }
    if dd > 1 {
        primes.push(dd);
    }
    for l in primes {
        let k = d / l;
        let mut z = poly_rem(gf, &x, f);
        for _ in 0..k {
            z = poly_powmod(gf, &z, q, f);
        }
        // z - x
        let mut diff = z.clone();
        if diff.len() < 2 {
            diff.resize(2, 0);
        }
        diff[1] = gf.sub(diff[1], 1);
        if poly_deg(&diff).is_none() {
            return false;
        }
        let g = poly_gcd(gf, f, &diff);
        if poly_deg(&g) != Some(0) {
            return false;
        }
    }
    true
}

impl ExtField {
    /// Builds GF(q^degree) with the lexicographically smallest monic
    /// irreducible modulus (coefficients read as a base-q integer).
    pub fn new(base: Gf, degree: usize) -> ExtField {
        assert!(degree >= 1);
        if degree == 1 {
            return ExtField {
                base,
                degree,
                modulus: vec![0, 1],
            };
        }
        let q = base.q() as u64;
        let mut k: u64 = 0;
        loop {
            let mut f = Vec::with_capacity(degree + 1);
            let mut kk = k;
            for _ in 0..degree {
                f.push((kk % q) as u8);
                kk /= q;
            }
            f.push(1);
            if is_irreducible(base, &f) {
                return ExtField {
                    base,
                    degree,
                    modulus: f,
                };
            }
            k += 1;
            assert!(k < q.saturating_pow(degree as u32), "no irreducible found");
        }
    }

    pub fn zero(&self) -> ExtEl {
        vec![0; self.degree]
    }

    pub fn one(&self) -> ExtEl {
        let mut e = self.zero();
        e[0] = 1;
        e
    }

    /// The power-basis element x^i.
    pub fn monomial(&self, i: usize) -> ExtEl {
        assert!(i < self.degree);
        let mut e = self.zero();
        e[i] = 1;
        e
    }

    pub fn is_zero(&self, a: &ExtEl) -> bool {
        a.iter().all(|&c| c == 0)
    }

    pub fn add(&self, a: &ExtEl, b: &ExtEl) -> ExtEl {
        a.iter()
            .zip(b)
            .map(|(&x, &y)| self.base.add(x, y))
            .collect()
    }

    pub fn scale(&self, a: &ExtEl, c: u8) -> ExtEl {
        a.iter().map(|&x| self.base.mul(x, c)).collect()
    }

    pub fn mul(&self, a: &ExtEl, b: &ExtEl) -> ExtEl {
        poly_mulmod(self.base, a, b, &self.modulus)
    }

    /// Frobenius endomorphism a -> a^q.
    pub fn frobenius(&self, a: &ExtEl) -> ExtEl {
        self.pow(a, self.base.q() as u64)
    }

    pub fn pow(&self, a: &ExtEl, n: u64) -> ExtEl {
        poly_powmod(self.base, a, n, &self.modulus)
    }
}
