//! Factorization of primitive squarefree integer polynomials: modular
//! factorization, quadratic Hensel lifting, subset recombination.

use rug::Integer;

use super::modp::{Gf, PolyP};

pub type ZPoly = Vec<Integer>;

/// Least nonnegative residue modulo a positive `m`.
fn mod_floor(c: &Integer, m: &Integer) -> Integer {
    Integer::from(c.modulo_ref(m))
}

fn trim(mut a: ZPoly) -> ZPoly {
    while a.last().is_some_and(|c| *c == 0) {
        a.pop();
    }
    a
}

fn reduce(a: &[Integer], m: &Integer) -> ZPoly {
    trim(a.iter().map(|c| mod_floor(c, m)).collect())
}

fn symmetric(a: &[Integer], m: &Integer) -> ZPoly {
    let half = Integer::from(m >> 1u32);
    trim(
        a.iter()
            .map(|c| {
                let r = mod_floor(c, m);
                if r > half {
                    r - m
                } else {
                    r
                }
            })
            .collect(),
    )
}

fn zmul(a: &[Integer], b: &[Integer]) -> ZPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![Integer::new(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if *x == 0 {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(out)
}

fn zadd(a: &[Integer], b: &[Integer]) -> ZPoly {
    let n = a.len().max(b.len());
    trim(
        (0..n)
            .map(|i| a.get(i).cloned().unwrap_or_default() + b.get(i).cloned().unwrap_or_default())
            .collect(),
    )
}

fn zsub(a: &[Integer], b: &[Integer]) -> ZPoly {
    let n = a.len().max(b.len());
    trim(
        (0..n)
            .map(|i| a.get(i).cloned().unwrap_or_default() - b.get(i).cloned().unwrap_or_default())
            .collect(),
    )
}

/// Division by a monic polynomial modulo `m`.
fn div_rem_monic(a: &[Integer], b: &[Integer], m: &Integer) -> (ZPoly, ZPoly) {
    let a = reduce(a, m);
    if a.len() < b.len() {
        return (Vec::new(), a);
    }
    let db = b.len() - 1;
    let mut r = a;
    let mut q = vec![Integer::new(); r.len() - db];
    for i in (0..q.len()).rev() {
        let c = mod_floor(&r[i + db], m);
        if c == 0 {
            continue;
        }
        for (j, bj) in b.iter().enumerate() {
            r[i + j] -= &c * bj;
            r[i + j] = mod_floor(&r[i + j], m);
        }
        q[i] = c;
    }
    r.truncate(db);
    (trim(q), reduce(&r, m))
}

pub fn content(f: &[Integer]) -> Integer {
    f.iter().fold(Integer::new(), |acc, c| acc.gcd(c))
}

/// Primitive part with positive leading coefficient.
pub fn primitive_part(f: &[Integer]) -> ZPoly {
    let mut c = content(f);
    if c == 0 {
        return Vec::new();
    }
    if f.last().is_some_and(|l| *l < 0) {
        c = -c;
    }
    f.iter()
        .map(|x| Integer::from(x.div_exact_ref(&c)))
        .collect()
}

fn to_modp(f: &[Integer], p: u64) -> PolyP {
    let pb = Integer::from(p);
    Gf::new(p).trim(
        f.iter()
            .map(|c| mod_floor(c, &pb).to_u64().expect("residue below p"))
            .collect(),
    )
}

fn from_modp(f: &PolyP) -> ZPoly {
    f.iter().map(|&c| Integer::from(c)).collect()
}

fn is_prime(n: u64) -> bool {
    n >= 2
        && (2..)
            .take_while(|d| d * d <= n)
            .all(|d| !n.is_multiple_of(d))
}

/// One quadratic Hensel step (f ≡ g h, s g + t h ≡ 1 mod m, h monic) to modulus m².
fn hensel_step(
    f: &[Integer],
    g: &[Integer],
    h: &[Integer],
    s: &[Integer],
    t: &[Integer],
    m: &Integer,
) -> [ZPoly; 4] {
    let m2 = Integer::from(m * m);
    let e = reduce(&zsub(f, &zmul(g, h)), &m2);
    let (q, r) = div_rem_monic(&zmul(s, &e), h, &m2);
    let g1 = reduce(&zadd(&zadd(g, &zmul(t, &e)), &zmul(&q, g)), &m2);
    let h1 = reduce(&zadd(h, &r), &m2);
    let b = reduce(
        &zsub(&zadd(&zmul(s, &g1), &zmul(t, &h1)), &[Integer::from(1)]),
        &m2,
    );
    let (c, d) = div_rem_monic(&zmul(s, &b), &h1, &m2);
    let s1 = reduce(&zsub(s, &d), &m2);
    let t1 = reduce(&zsub(&zsub(t, &zmul(t, &b)), &zmul(&c, &g1)), &m2);
    [g1, h1, s1, t1]
}

/// Lifts `f ≡ lc(f)·∏ factors (mod p)` to monic factors modulo `p^(2^steps)`.
fn hensel_lift(f: &[Integer], factors: &[PolyP], p: u64, steps: u32) -> Vec<ZPoly> {
    let gf = Gf::new(p);
    let pb = Integer::from(p);
    let modulus = (0..steps).fold(pb.clone(), |m, _| Integer::from(&m * &m));
    let mut out = Vec::with_capacity(factors.len());
    let mut rest = reduce(f, &modulus);
    for (i, fi) in factors.iter().enumerate() {
        if i + 1 == factors.len() {
            // the last factor is the remaining cofactor made monic
            let lc = rest.last().unwrap().clone();
            let inv = lc.invert(&modulus).expect("leading coefficient is a unit");
            out.push(reduce(
                &rest
                    .iter()
                    .map(|c| Integer::from(c * &inv))
                    .collect::<Vec<_>>(),
                &modulus,
            ));
            break;
        }
        let rest_p = to_modp(&rest, p);
        let cof_p = gf.div_rem(&rest_p, fi).0;
        let (_, s_p, t_p) = gf.ext_gcd(&cof_p, fi);
        let (mut g, mut h) = (from_modp(&cof_p), from_modp(fi));
        let (mut s, mut t) = (from_modp(&s_p), from_modp(&t_p));
        let mut m = pb.clone();
        for _ in 0..steps {
            let target = reduce(&rest, &Integer::from(&m * &m));
            [g, h, s, t] = hensel_step(&target, &g, &h, &s, &t, &m);
            m = Integer::from(&m * &m);
        }
        out.push(h);
        rest = g;
    }
    out
}

/// Irreducible factors over ℤ of a primitive squarefree polynomial with
/// positive leading coefficient.
pub fn factor_primitive_squarefree(f: &[Integer]) -> Vec<ZPoly> {
    let n = f.len() - 1;
    if n <= 1 {
        return vec![f.to_vec()];
    }
    let lc = f.last().unwrap().clone();
    let p = (3u64..)
        .step_by(2)
        .filter(|&p| is_prime(p))
        .find(|&p| {
            !lc.is_divisible_u(p as u32) && {
                let fp = to_modp(f, p);
                fp.len() == f.len() && Gf::new(p).is_squarefree(&fp)
            }
        })
        .expect("some prime avoids the discriminant");
    let gf = Gf::new(p);
    let fp = gf.monic(&to_modp(f, p));
    let modular = gf.factor_squarefree(&fp, p);
    if modular.len() == 1 {
        return vec![f.to_vec()];
    }
    // Factor coefficient bound: |lc| 2^n ||f||_2
    let norm2: Integer = f.iter().map(|c| Integer::from(c * c)).sum();
    let bound = (lc.abs() << n as u32) * (norm2.sqrt() + 1u32);
    let twice = Integer::from(&bound * 2u32);
    let mut steps = 0u32;
    let mut modulus = Integer::from(p);
    while modulus <= twice {
        modulus = Integer::from(&modulus * &modulus);
        steps += 1;
    }
    let lifted = hensel_lift(f, &modular, p, steps);
    recombine(f.to_vec(), lifted, &modulus)
}

fn recombine(f: ZPoly, mut modular: Vec<ZPoly>, m: &Integer) -> Vec<ZPoly> {
    let mut found = Vec::new();
    let mut fstar = f;
    let mut size = 1;
    'outer: while 2 * size <= modular.len() {
        let b = fstar.last().unwrap().clone();
        for subset in Subsets::new(modular.len(), size) {
            let (inside, outside): (Vec<_>, Vec<_>) =
                (0..modular.len()).partition(|i| subset.contains(i));
            let prod = |idx: &[usize]| {
                let p = idx.iter().fold(vec![b.clone()], |acc, &i| {
                    reduce(&zmul(&acc, &modular[i]), m)
                });
                symmetric(&p, m)
            };
            let g = prod(&inside);
            let h = prod(&outside);
            let lhs = zmul(&g, &h);
            let rhs: ZPoly = fstar.iter().map(|c| Integer::from(c * &b)).collect();
            if lhs == rhs {
                found.push(primitive_part(&g));
                fstar = primitive_part(&h);
                modular = outside.into_iter().map(|i| modular[i].clone()).collect();
                continue 'outer;
            }
        }
        size += 1;
    }
    found.push(fstar);
    found
}

/// Index subsets of fixed size in lexicographic order.
struct Subsets {
    n: usize,
    idx: Vec<usize>,
    done: bool,
}

impl Subsets {
    fn new(n: usize, k: usize) -> Self {
        Subsets {
            n,
            idx: (0..k).collect(),
            done: k > n,
        }
    }
}

impl Iterator for Subsets {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        if self.done {
            return None;
        }
        let out = self.idx.clone();
        let k = self.idx.len();
        let mut i = k;
        loop {
            if i == 0 {
                self.done = true;
                break;
            }
            i -= 1;
            if self.idx[i] < self.n - k + i {
                self.idx[i] += 1;
                for j in i + 1..k {
                    self.idx[j] = self.idx[j - 1] + 1;
                }
                break;
            }
        }
        Some(out)
    }
}

/// Clears denominators; result has integer coefficients with the same roots.
pub fn integer_multiple(f: &[crate::Rational]) -> ZPoly {
    let den = crate::rational::common_denominator(f.iter());
    f.iter()
        .map(|c| Integer::from(c.numer() * &den).div_exact(c.denom()))
        .collect()
}
