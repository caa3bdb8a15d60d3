//! Small finite fields as explicit towers: k = F_p[x]/(g) and
//! K = k[y]/(h), with deterministic irreducible moduli found by scan.
//! Field elements are fixed-length coefficient vectors, so equality and
//! ordering are structural.

use std::fmt::Debug;

use crate::error::{KlabError, Result};

/// Element of the base field k (coefficients over F_p, length e).
pub type KBase = Vec<u64>;
/// Element of the extension K (coefficients over k, length m).
pub type KExt = Vec<KBase>;

/// Minimal field interface for the generic polynomial helpers.
pub trait Fld {
    type E: Clone + PartialEq + Ord + Debug;
    fn zero(&self) -> Self::E;
    fn one(&self) -> Self::E;
    fn add(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn sub(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn mul(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn inv(&self, a: &Self::E) -> Self::E;
    fn is_zero(&self, a: &Self::E) -> bool;
    fn elements(&self) -> Vec<Self::E>;
    fn size(&self) -> u64;
}

/// The prime field F_p.
#[derive(Debug, Clone)]
pub struct PrimeFld {
    pub p: u64,
}

impl Fld for PrimeFld {
    type E = u64;
    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1 % self.p
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        (a + b) % self.p
    }
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        (a + self.p - (b % self.p)) % self.p
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        (a * b) % self.p
    }
    fn inv(&self, a: &u64) -> u64 {
        assert!(*a % self.p != 0, "division by zero");
        // extended euclid
        let (mut t, mut new_t): (i64, i64) = (0, 1);
        let (mut r, mut new_r) = (self.p as i64, (*a % self.p) as i64);
        while new_r != 0 {
            let q = r / new_r;
            (t, new_t) = (new_t, t - q * new_t);
            (r, new_r) = (new_r, r - q * new_r);
        }
        assert_eq!(r, 1);
        t.rem_euclid(self.p as i64) as u64
    }
    fn is_zero(&self, a: &u64) -> bool {
        a % self.p == 0
    }
    fn elements(&self) -> Vec<u64> {
        (0..self.p).collect()
    }
    fn size(&self) -> u64 {
        self.p
    }
}

/// Degree-d extension of a field by a monic irreducible modulus.
#[derive(Debug, Clone)]
pub struct ExtFld<F: Fld> {
    pub base: F,
    /// Monic modulus, length d+1 (leading coefficient 1).
    pub modulus: Vec<F::E>,
}

impl<F: Fld> ExtFld<F> {
    pub fn degree(&self) -> usize {
        self.modulus.len() - 1
    }

    fn reduce(&self, mut poly: Vec<F::E>) -> Vec<F::E> {
        let d = self.degree();
        while poly.len() > d {
            let lead = poly.pop().unwrap();
            if !self.base.is_zero(&lead) {
                let k = poly.len() - d;
                for i in 0..d {
                    let sub = self.base.mul(&lead, &self.modulus[i]);
                    poly[k + i] = self.base.sub(&poly[k + i], &sub);
                }
            }
        }
        while poly.len() < d {
            poly.push(self.base.zero());
        }
        poly
    }

    pub fn embed(&self, a: &F::E) -> Vec<F::E> {
        let mut v = vec![self.base.zero(); self.degree()];
        v[0] = a.clone();
        v
    }
}

impl<F: Fld> Fld for ExtFld<F> {
    type E = Vec<F::E>;
    fn zero(&self) -> Self::E {
        vec![self.base.zero(); self.degree()]
    }
    fn one(&self) -> Self::E {
        let mut v = self.zero();
        v[0] = self.base.one();
        v
    }
    fn add(&self, a: &Self::E, b: &Self::E) -> Self::E {
        a.iter().zip(b).map(|(x, y)| self.base.add(x, y)).collect()
    }
    fn sub(&self, a: &Self::E, b: &Self::E) -> Self::E {
        a.iter().zip(b).map(|(x, y)| self.base.sub(x, y)).collect()
    }
    fn mul(&self, a: &Self::E, b: &Self::E) -> Self::E {
        let d = self.degree();
        let mut prod = vec![self.base.zero(); 2 * d.max(1)];
        for (i, x) in a.iter().enumerate() {
            if self.base.is_zero(x) {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                let add = self.base.mul(x, y);
                prod[i + j] = self.base.add(&prod[i + j], &add);
            }
        }
        self.reduce(prod)
    }
    fn inv(&self, a: &Self::E) -> Self::E {
        assert!(!self.is_zero(a), "division by zero");
        // extended euclid in base[x]
        let mut r0: Vec<F::E> = self.modulus.clone();
        let mut r1: Vec<F::E> = trim(&self.base, a.clone());
        let mut t0: Vec<F::E> = vec![];
        let mut t1: Vec<F::E> = vec![self.base.one()];
        while !r1.is_empty() {
            let (q, r) = poly_divmod(&self.base, &r0, &r1);
            let t2 = poly_sub(&self.base, &t0, &poly_mul(&self.base, &q, &t1));
            r0 = r1;
            r1 = r;
            t0 = t1;
            t1 = t2;
        }
        // r0 is a unit constant
        assert_eq!(r0.len(), 1, "modulus is not irreducible");
        let c = self.base.inv(&r0[0]);
        let mut out: Vec<F::E> = t0.iter().map(|x| self.base.mul(x, &c)).collect();
        out.resize(self.degree(), self.base.zero());
        out
    }
    fn is_zero(&self, a: &Self::E) -> bool {
        a.iter().all(|x| self.base.is_zero(x))
    }
    fn elements(&self) -> Vec<Self::E> {
        let base_elems = self.base.elements();
        let mut out: Vec<Self::E> = vec![vec![]];
        for _ in 0..self.degree() {
            let mut next = Vec::with_capacity(out.len() * base_elems.len());
            for prefix in &out {
                for b in &base_elems {
                    let mut v = prefix.clone();
                    v.push(b.clone());
                    next.push(v);
                }
            }
            out = next;
        }
        out
    }
    fn size(&self) -> u64 {
        self.base.size().pow(self.degree() as u32)
    }
}

// --- dense polynomial helpers over an arbitrary Fld (little-endian) ---

pub fn trim<F: Fld>(f: &F, mut v: Vec<F::E>) -> Vec<F::E> {
    while v.last().is_some_and(|x| f.is_zero(x)) {
        v.pop();
    }
    v
}

pub fn poly_mul<F: Fld>(f: &F, a: &[F::E], b: &[F::E]) -> Vec<F::E> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![f.zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if f.is_zero(x) {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            let add = f.mul(x, y);
            out[i + j] = f.add(&out[i + j], &add);
        }
    }
    trim(f, out)
}

pub fn poly_sub<F: Fld>(f: &F, a: &[F::E], b: &[F::E]) -> Vec<F::E> {
    let n = a.len().max(b.len());
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let x = a.get(i).cloned().unwrap_or_else(|| f.zero());
        let y = b.get(i).cloned().unwrap_or_else(|| f.zero());
        out.push(f.sub(&x, &y));
    }
    trim(f, out)
}

/// Division with remainder by a nonzero divisor.
pub fn poly_divmod<F: Fld>(f: &F, a: &[F::E], b: &[F::E]) -> (Vec<F::E>, Vec<F::E>) {
    let b = trim(f, b.to_vec());
    assert!(!b.is_empty(), "division by the zero polynomial");
    let mut rem = trim(f, a.to_vec());
    let lead_inv = f.inv(b.last().unwrap());
    let mut quot = vec![f.zero(); rem.len().saturating_sub(b.len() - 1)];
    while rem.len() >= b.len() {
        let k = rem.len() - b.len();
        let c = f.mul(rem.last().unwrap(), &lead_inv);
        quot[k] = c.clone();
        for (i, bc) in b.iter().enumerate() {
            let sub = f.mul(&c, bc);
            rem[k + i] = f.sub(&rem[k + i], &sub);
        }
        rem = trim(f, rem);
    }
    (trim(f, quot), rem)
}

fn poly_gcd<F: Fld>(f: &F, a: &[F::E], b: &[F::E]) -> Vec<F::E> {
    let mut r0 = trim(f, a.to_vec());
    let mut r1 = trim(f, b.to_vec());
    while !r1.is_empty() {
        let (_, r) = poly_divmod(f, &r0, &r1);
        r0 = r1;
        r1 = r;
    }
    r0
}

/// x^(q^steps) mod h, by repeated q-power maps.
fn frobenius_power<F: Fld>(f: &F, h: &[F::E], q: u64, steps: usize) -> Vec<F::E> {
    // x^q mod h by square-and-multiply, then iterate
    let modpow = |base: &[F::E], mut exp: u64| -> Vec<F::E> {
        let mut result = vec![f.one()];
        let mut cur = base.to_vec();
        while exp > 0 {
            if exp & 1 == 1 {
                let prod = poly_mul(f, &result, &cur);
                result = poly_divmod(f, &prod, h).1;
            }
            let sq = poly_mul(f, &cur, &cur);
            cur = poly_divmod(f, &sq, h).1;
            exp >>= 1;
        }
        result
    };
    let x = vec![f.zero(), f.one()];
    let mut cur = x;
    for _ in 0..steps {
        cur = modpow(&cur, q);
    }
    cur
}

/// Irreducibility over the field f (size q) via the distinct-degree test.
fn is_irreducible<F: Fld>(f: &F, h: &[F::E]) -> bool {
    let d = h.len() - 1;
    if d == 0 {
        return false;
    }
    if d == 1 {
        return true;
    }
    let q = f.size();
    let x = vec![f.zero(), f.one()];
    // x^(q^d) == x mod h
    let frob_d = frobenius_power(f, h, q, d);
    if trim(f, poly_sub(f, &frob_d, &x)) != Vec::<F::E>::new() {
        return false;
    }
    // gcd(x^(q^(d/l)) - x, h) == 1 for every prime l | d
    let mut primes = vec![];
    let mut dd = d;
    let mut p = 2;
    while p * p <= dd {
        if dd % p == 0 {
            primes.push(p);
            while dd % p == 0 {
                dd /= p;
            }
        }
        p += 1;
    }
    if dd > 1 {
        primes.push(dd);
    }
    for l in primes {
        let frob = frobenius_power(f, h, q, d / l);
        let g = poly_gcd(f, &poly_sub(f, &frob, &x), h);
        if g.len() != 1 {
            return false;
        }
    }
    true
}

/// First monic irreducible of the given degree in lexicographic
/// coefficient order (deterministic).
pub fn find_irreducible<F: Fld>(f: &F, degree: usize) -> Vec<F::E> {
    assert!(degree >= 1);
    let elems = f.elements();
    let mut coeffs = vec![0usize; degree]; // indices into elems for the low coefficients
    loop {
        let mut h: Vec<F::E> = coeffs.iter().map(|&i| elems[i].clone()).collect();
        h.push(f.one());
        if is_irreducible(f, &h) {
            return h;
        }
        let mut k = 0;
        loop {
            if k == degree {
                panic!("no irreducible of degree {degree} found: field scan bug");
            }
            coeffs[k] += 1;
            if coeffs[k] < elems.len() {
                break;
            }
            coeffs[k] = 0;
            k += 1;
        }
    }
}

/// The tower context k = F_{p^e} inside K = k-extension of degree m.
#[derive(Debug, Clone)]
pub struct FieldCtx {
    pub p: u64,
    pub e: usize,
    pub m: usize,
    pub kfield: ExtFld<PrimeFld>,
    pub kext: ExtFld<ExtFld<PrimeFld>>,
}

impl FieldCtx {
    pub fn new(p: u64, e: usize, m: usize) -> Result<FieldCtx> {
        if !(2..=7).contains(&p) || (2..p).any(|d| p % d == 0) {
            return Err(KlabError::InvalidDatum(format!("unsupported characteristic {p}")));
        }
        if e == 0 || m == 0 || e * m > 8 {
            return Err(KlabError::InvalidDatum("field degrees out of the desk-scale range".into()));
        }
        let prime = PrimeFld { p };
        let g = find_irreducible(&prime, e);
        let kfield = ExtFld { base: prime, modulus: g };
        let h = find_irreducible(&kfield, m);
        let kext = ExtFld { base: kfield.clone(), modulus: h };
        Ok(FieldCtx { p, e, m, kfield, kext })
    }

    /// Embed a base-field element into K.
    pub fn embed(&self, a: &KBase) -> KExt {
        self.kext.embed(a)
    }

    pub fn k_size(&self) -> u64 {
        self.kfield.size()
    }
}
