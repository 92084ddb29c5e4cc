//! `GF(2^m)` for `m <= 16` with bit-packed elements and log tables, plus the
//! group law of a long Weierstrass curve over it. Independent of the library.

/// Remainder of the GF(2)[x] polynomial `a` modulo `b` (bit `i` = coefficient of `x^i`).
fn poly_rem(mut a: u64, b: u64) -> u64 {
    let db = 63 - b.leading_zeros();
    while a != 0 && 63 - a.leading_zeros() >= db {
        a ^= b << (63 - a.leading_zeros() - db);
    }
    a
}

fn is_irreducible(f: u64) -> bool {
    let n = 63 - f.leading_zeros();
    (2u64..(1 << (n / 2 + 1))).filter(|g| 63 - g.leading_zeros() <= n / 2).all(|g| poly_rem(f, g) != 0)
}

pub struct Gf2m {
    pub m: u32,
    pub modulus: u64,
    log: Vec<u32>,
    exp: Vec<u32>,
}

impl Gf2m {
    /// Uses the first irreducible polynomial of degree `m` in numeric order.
    pub fn new(m: u32) -> Self {
        let modulus = ((1u64 << m)..(1u64 << (m + 1))).find(|&f| is_irreducible(f)).expect("exists");
        Self::with_modulus(m, modulus)
    }

    pub fn with_modulus(m: u32, modulus: u64) -> Self {
        assert!(is_irreducible(modulus), "modulus must be irreducible");
        let size = 1usize << m;
        let slow_mul = |a: u64, b: u64| -> u64 {
            let mut acc = 0u64;
            for i in 0..m {
                if (b >> i) & 1 == 1 {
                    acc ^= a << i;
                }
            }
            poly_rem(acc, modulus)
        };
        // search for a primitive element
        for g in 2..size as u64 {
            let mut exp = vec![0u32; size - 1];
            let mut log = vec![u32::MAX; size];
            let mut x = 1u64;
            let mut ok = true;
            for (i, slot) in exp.iter_mut().enumerate() {
                if log[x as usize] != u32::MAX {
                    ok = false;
                    break;
                }
                *slot = x as u32;
                log[x as usize] = i as u32;
                x = slow_mul(x, g);
            }
            if ok {
                return Gf2m { m, modulus, log, exp };
            }
        }
        // m = 1: the only unit is 1
        Gf2m { m, modulus, log: vec![u32::MAX, 0], exp: vec![1] }
    }

    pub fn size(&self) -> u32 {
        1 << self.m
    }

    pub fn mul(&self, a: u32, b: u32) -> u32 {
        if a == 0 || b == 0 {
            return 0;
        }
        let n = self.exp.len();
        self.exp[(self.log[a as usize] as usize + self.log[b as usize] as usize) % n]
    }

    pub fn inv(&self, a: u32) -> u32 {
        assert!(a != 0);
        let n = self.exp.len();
        self.exp[(n - self.log[a as usize] as usize) % n]
    }
}

/// Long Weierstrass curve with coefficients in `{0, 1}` (reduced mod 2).
pub struct Curve2<'a> {
    pub k: &'a Gf2m,
    pub a: [u32; 5],
}

pub type Pt = Option<(u32, u32)>;

impl Curve2<'_> {
    fn rhs(&self, x: u32) -> u32 {
        let k = self.k;
        let [_, a2, _, a4, a6] = self.a;
        let x2 = k.mul(x, x);
        k.mul(x2, x) ^ k.mul(a2, x2) ^ k.mul(a4, x) ^ a6
    }

    pub fn contains(&self, x: u32, y: u32) -> bool {
        let [a1, _, a3, _, _] = self.a;
        let k = self.k;
        k.mul(y, y ^ k.mul(a1, x) ^ a3) == self.rhs(x)
    }

    /// Every affine point, by looping over all `(x, y)`.
    pub fn affine_points(&self) -> Vec<(u32, u32)> {
        let mut out = Vec::new();
        for x in 0..self.k.size() {
            for y in 0..self.k.size() {
                if self.contains(x, y) {
                    out.push((x, y));
                }
            }
        }
        out
    }

    pub fn neg(&self, p: Pt) -> Pt {
        let [a1, _, a3, _, _] = self.a;
        p.map(|(x, y)| (x, y ^ self.k.mul(a1, x) ^ a3))
    }

    pub fn add(&self, p: Pt, q: Pt) -> Pt {
        let (Some((x1, y1)), Some((x2, y2))) = (p, q) else { return p.or(q) };
        let k = self.k;
        let [a1, a2, a3, a4, _] = self.a;
        if x1 == x2 && self.neg(q) == p {
            return None;
        }
        // characteristic 2: signs drop, 2 = 0, 3 = 1
        let lambda = if x1 == x2 {
            let num = k.mul(x1, x1) ^ a4 ^ k.mul(a1, y1);
            let den = k.mul(a1, x1) ^ a3;
            k.mul(num, k.inv(den))
        } else {
            k.mul(y1 ^ y2, k.inv(x1 ^ x2))
        };
        let nu = y1 ^ k.mul(lambda, x1);
        let x3 = k.mul(lambda, lambda) ^ k.mul(a1, lambda) ^ a2 ^ x1 ^ x2;
        let y3 = k.mul(lambda ^ a1, x3) ^ nu ^ a3;
        Some((x3, y3))
    }

    pub fn mul(&self, p: Pt, n: u64) -> Pt {
        let mut acc = None;
        for _ in 0..n {
            acc = self.add(acc, p);
        }
        acc
    }
}
