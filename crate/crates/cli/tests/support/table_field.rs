//! Table-driven arithmetic in a small field `F_p[t]/(m)`, written without the
//! library's field code. Elements are indices `sum c_i p^i`.

pub struct TableField {
    pub order: usize,
    add: Vec<u16>,
    mul: Vec<u16>,
    neg: Vec<u16>,
    inv: Vec<u16>,
}

fn digits(mut i: usize, p: usize, k: usize) -> Vec<usize> {
    (0..k)
        .map(|_| {
            let d = i % p;
            i /= p;
            d
        })
        .collect()
}

fn undigits(d: &[usize], p: usize) -> usize {
    d.iter().rev().fold(0, |acc, &c| acc * p + c)
}

impl TableField {
    /// `modulus` is monic of degree `k`, lowest coefficient first; empty for
    /// the prime field.
    pub fn new(p: usize, modulus: &[u64]) -> Self {
        let k = modulus.len().saturating_sub(1).max(1);
        let order = p.pow(k as u32);
        let mut add = vec![0u16; order * order];
        let mut mul = vec![0u16; order * order];
        for a in 0..order {
            let da = digits(a, p, k);
            for b in 0..order {
                let db = digits(b, p, k);
                let sum: Vec<usize> = da.iter().zip(&db).map(|(x, y)| (x + y) % p).collect();
                add[a * order + b] = undigits(&sum, p) as u16;
                let mut prod = vec![0usize; 2 * k];
                for (i, x) in da.iter().enumerate() {
                    for (j, y) in db.iter().enumerate() {
                        prod[i + j] = (prod[i + j] + x * y) % p;
                    }
                }
                for top in (k..2 * k).rev() {
                    let c = prod[top];
                    if c == 0 {
                        continue;
                    }
                    prod[top] = 0;
                    for (i, &m) in modulus[..k].iter().enumerate() {
                        let sub = c * m as usize % p;
                        prod[top - k + i] = (prod[top - k + i] + p - sub) % p;
                    }
                }
                mul[a * order + b] = undigits(&prod[..k], p) as u16;
            }
        }
        let neg = (0..order).map(|a| (0..order).find(|&b| add[a * order + b] == 0).unwrap() as u16).collect();
        let inv = (0..order)
            .map(|a| if a == 0 { 0 } else { (1..order).find(|&b| mul[a * order + b] == 1).expect("field") as u16 })
            .collect();
        TableField { order, add, mul, neg, inv }
    }

    pub fn add(&self, a: u16, b: u16) -> u16 {
        self.add[a as usize * self.order + b as usize]
    }
    pub fn mul(&self, a: u16, b: u16) -> u16 {
        self.mul[a as usize * self.order + b as usize]
    }
    pub fn sub(&self, a: u16, b: u16) -> u16 {
        self.add(a, self.neg[b as usize])
    }
    pub fn inv(&self, a: u16) -> u16 {
        self.inv[a as usize]
    }
}

pub type Poly = Vec<u16>;

pub fn trim(mut f: Poly) -> Poly {
    while f.last() == Some(&0) {
        f.pop();
    }
    f
}

pub fn poly_mul(fld: &TableField, a: &[u16], b: &[u16]) -> Poly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u16; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = fld.add(out[i + j], fld.mul(x, y));
        }
    }
    trim(out)
}

/// Quotient when the monic `g` divides `f` exactly.
pub fn divide_exact(fld: &TableField, f: &[u16], g: &[u16]) -> Option<Poly> {
    let dg = g.len() - 1;
    if f.len() < g.len() {
        return None;
    }
    let mut rem = f.to_vec();
    let mut quot = vec![0u16; f.len() - dg];
    for i in (0..quot.len()).rev() {
        let c = rem[i + dg];
        quot[i] = c;
        if c != 0 {
            for (j, &gj) in g.iter().enumerate() {
                rem[i + j] = fld.sub(rem[i + j], fld.mul(c, gj));
            }
        }
    }
    rem[..dg].iter().all(|&c| c == 0).then_some(quot)
}

/// Factorization by trial division against every monic polynomial of
/// increasing degree: `(leading coefficient, sorted (factor, multiplicity))`.
pub fn brute_factor(fld: &TableField, f: &[u16]) -> (u16, Vec<(Poly, u32)>) {
    let lead = *f.last().expect("nonzero");
    let li = fld.inv(lead);
    let mut rest: Poly = f.iter().map(|&c| fld.mul(c, li)).collect();
    let mut out = Vec::new();
    let q = fld.order;
    let mut d = 1;
    while 2 * d < rest.len() {
        for tail in 0..q.pow(d as u32) {
            let mut g: Poly = digits(tail, q, d).into_iter().map(|c| c as u16).collect();
            g.push(1);
            let mut mult = 0;
            while let Some(quot) = divide_exact(fld, &rest, &g) {
                rest = quot;
                mult += 1;
            }
            if mult > 0 {
                out.push((g, mult));
            }
        }
        d += 1;
    }
    if rest.len() > 1 {
        out.push((rest, 1));
    }
    out.sort();
    (lead, out)
}
