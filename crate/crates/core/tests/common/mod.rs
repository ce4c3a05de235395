//! Test-side reference implementations, written without the library's
//! elimination, ordering or binomial code.

#![allow(dead_code)]

use std::collections::{BTreeMap, HashSet};

use hk_core::{Prime, Trinomial};
use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};

pub fn prime(p: u64) -> Prime {
    Prime::new(p).unwrap()
}

pub fn tri(s: &str, p: u64) -> Trinomial {
    Trinomial::parse(s, prime(p)).unwrap()
}

/// Ascending deglex key: degree, then exponents read from x_m down.
pub fn deglex_key(e: &[u32]) -> (u32, Vec<u32>) {
    (e.iter().sum(), e.iter().rev().copied().collect())
}

pub fn all_monomials(q: u32, m: usize) -> Vec<Vec<u32>> {
    let mut out = vec![vec![]];
    for _ in 0..m {
        out = out
            .into_iter()
            .flat_map(|v| {
                (0..q).map(move |e| {
                    let mut w = v.clone();
                    w.push(e);
                    w
                })
            })
            .collect();
    }
    out
}

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    acc
}

fn terms_of(f: &Trinomial) -> Vec<(Vec<u32>, u64)> {
    f.terms()
        .iter()
        .map(|t| {
            (
                t.monomial().exponents().to_vec(),
                u64::from(t.coefficient().value()),
            )
        })
        .collect()
}

/// Members of `A_c + (f)`: leading monomials of a sparse echelon basis with
/// columns in increasing deglex.
pub fn naive_members(f: &Trinomial, q: u32) -> HashSet<Vec<u32>> {
    let p = u64::from(f.prime().get());
    let m = f.nvars();
    let mut ms = all_monomials(q, m);
    ms.sort_by_key(|e| deglex_key(e));
    let idx: BTreeMap<Vec<u32>, usize> = ms.iter().cloned().enumerate().map(|(i, e)| (e, i)).collect();
    let terms = terms_of(f);
    let mut basis: BTreeMap<usize, BTreeMap<usize, u64>> = BTreeMap::new();
    for g in &ms {
        let mut row: BTreeMap<usize, u64> = BTreeMap::new();
        for (t, c) in &terms {
            let e: Vec<u32> = g.iter().zip(t).map(|(a, b)| a + b).collect();
            if e.iter().all(|&x| x < q) {
                let v = row.entry(idx[&e]).or_insert(0);
                *v = (*v + c) % p;
            }
        }
        row.retain(|_, v| *v != 0);
        while let Some((&lead, &lv)) = row.iter().next() {
            match basis.get(&lead) {
                Some(b) => {
                    let factor = lv * pow_mod(b[&lead], p - 2, p) % p;
                    for (&k, &v) in b {
                        let e = row.entry(k).or_insert(0);
                        *e = (*e + p - factor * v % p) % p;
                    }
                    row.retain(|_, v| *v != 0);
                }
                None => {
                    basis.insert(lead, row);
                    break;
                }
            }
        }
    }
    basis.keys().map(|&j| ms[j].clone()).collect()
}

/// Dense rank over F_p with full pivoting by row swaps and inverses.
pub fn dense_rank(mut rows: Vec<Vec<u64>>, p: u64) -> usize {
    let cols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(piv) = (rank..rows.len()).find(|&r| !rows[r][c].is_multiple_of(p)) else {
            continue;
        };
        rows.swap(rank, piv);
        let inv = pow_mod(rows[rank][c], p - 2, p);
        for r in 0..rows.len() {
            if r != rank && !rows[r][c].is_multiple_of(p) {
                let factor = rows[r][c] * inv % p;
                let pivot_row = rows[rank].clone();
                for (x, y) in rows[r].iter_mut().zip(&pivot_row) {
                    *x = (*x + p * p - factor * y % p) % p;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// `q^m - rank` from one dense matrix over all of 𝔐.
pub fn naive_dimension(f: &Trinomial, q: u32) -> u64 {
    let p = u64::from(f.prime().get());
    let m = f.nvars();
    let ms = all_monomials(q, m);
    let idx: BTreeMap<Vec<u32>, usize> = ms.iter().cloned().enumerate().map(|(i, e)| (e, i)).collect();
    let terms = terms_of(f);
    let rows: Vec<Vec<u64>> = ms
        .iter()
        .map(|g| {
            let mut row = vec![0u64; ms.len()];
            for (t, c) in &terms {
                let e: Vec<u32> = g.iter().zip(t).map(|(a, b)| a + b).collect();
                if e.iter().all(|&x| x < q) {
                    row[idx[&e]] = (row[idx[&e]] + c) % p;
                }
            }
            row
        })
        .collect();
    ms.len() as u64 - dense_rank(rows, p) as u64
}

/// Exact binomial coefficient; zero outside `0 <= k <= n`.
pub fn binom(n: i64, k: i64) -> i128 {
    if k < 0 || n < 0 || k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: i128 = 1;
    for i in 0..k {
        acc = acc * i128::from(n - i) / i128::from(i + 1);
    }
    acc
}

pub fn modp(v: i128, p: u64) -> u32 {
    v.rem_euclid(i128::from(p)) as u32
}

/// One corpus instance: a random disjoint-term trinomial and `(p, n)`.
#[derive(Clone, Debug)]
pub struct Instance {
    pub text: String,
    pub p: u64,
    pub n: u32,
}

impl Instance {
    pub fn q(&self) -> u32 {
        (self.p as u32).pow(self.n)
    }

    pub fn poly(&self) -> Trinomial {
        tri(&self.text, self.p)
    }
}

/// A random disjoint-term trinomial text in `m` variables, exponents in `1..=max_exp`.
pub fn random_trinomial(rng: &mut StdRng, m: usize, max_exp: u32) -> String {
    loop {
        let mut vars: Vec<usize> = (0..m).collect();
        vars.shuffle(rng);
        let a = rng.gen_range(1..m - 1);
        let b = rng.gen_range(a + 1..m);
        let parts = [&vars[..a], &vars[a..b], &vars[b..]];
        let mut terms = Vec::new();
        let mut used = HashSet::new();
        for part in parts {
            let mut chosen: Vec<usize> = part.iter().copied().filter(|_| rng.gen_bool(0.8)).collect();
            if chosen.is_empty() {
                chosen.push(part[0]);
            }
            chosen.sort();
            let factors: Vec<String> = chosen
                .iter()
                .map(|&v| {
                    used.insert(v);
                    let e = rng.gen_range(1..=max_exp);
                    if e == 1 {
                        format!("x{}", v + 1)
                    } else {
                        format!("x{}^{}", v + 1, e)
                    }
                })
                .collect();
            terms.push(factors.join("*"));
        }
        // Keep m as the variable count: the highest variable must occur.
        if used.contains(&(m - 1)) {
            return terms.join(" + ");
        }
    }
}

/// The shared random corpus: m in {3,4,5}, exponents <= 4, p in {2,3},
/// q <= 9, q^m <= 4096.
pub fn corpus() -> Vec<Instance> {
    let mut rng = StdRng::seed_from_u64(0x5eed_2024);
    let mut out = Vec::new();
    while out.len() < 16 {
        let m = *[3usize, 4, 5].choose(&mut rng).unwrap();
        let p = *[2u64, 3].choose(&mut rng).unwrap();
        let n = if p == 2 { rng.gen_range(1..=3) } else { rng.gen_range(1..=2) };
        let q = (p as u32).pow(n);
        if q > 9 || u64::from(q).pow(m as u32) > 4096 {
            continue;
        }
        let text = random_trinomial(&mut rng, m, 4);
        out.push(Instance { text, p, n });
    }
    out
}
