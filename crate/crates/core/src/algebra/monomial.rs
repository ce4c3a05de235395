use std::cmp::Ordering;
use std::fmt;

use super::AlgebraError;

/// Exponent vector over `m` variables; entry `i` is the exponent of `x_{i+1}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn new(exponents: Vec<u32>) -> Self {
        Monomial(exponents)
    }

    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    /// `x_{index+1}^exp` in `nvars` variables.
    pub fn var(index: usize, exp: u32, nvars: usize) -> Self {
        let mut e = vec![0; nvars];
        e[index] = exp;
        Monomial(e)
    }

    #[inline]
    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    #[inline]
    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn degree(&self) -> u64 {
        self.0.iter().map(|&e| u64::from(e)).sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    /// Indices of variables with a positive exponent.
    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.0
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, _)| i)
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(&a, &b)| a == 0 || b == 0)
    }

    /// Divisibility ignores coefficients and is componentwise.
    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.len() == other.0.len() && self.0.iter().zip(&other.0).all(|(&a, &b)| a <= b)
    }

    pub fn mul(&self, other: &Monomial) -> Result<Monomial, AlgebraError> {
        self.check_len(other)?;
        Ok(Monomial(
            self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect(),
        ))
    }

    /// Exact quotient `self / divisor`.
    pub fn div(&self, divisor: &Monomial) -> Result<Monomial, AlgebraError> {
        self.check_len(divisor)?;
        if !divisor.divides(self) {
            return Err(AlgebraError::NotDivisible {
                dividend: self.to_string(),
                divisor: divisor.to_string(),
            });
        }
        Ok(Monomial(
            self.0.iter().zip(&divisor.0).map(|(a, b)| a - b).collect(),
        ))
    }

    /// Degree-lexicographic comparison with `x_1 < x_2 < ... < x_m`: total
    /// degree first, ties broken by the first differing exponent reading from
    /// `x_m` down to `x_1`.
    pub fn deglex_cmp(&self, other: &Monomial) -> Result<Ordering, AlgebraError> {
        self.check_len(other)?;
        Ok(deglex_cmp_slices(&self.0, &other.0))
    }

    fn check_len(&self, other: &Monomial) -> Result<(), AlgebraError> {
        if self.0.len() != other.0.len() {
            return Err(AlgebraError::VariableCountMismatch(
                self.0.len(),
                other.0.len(),
            ));
        }
        Ok(())
    }
}

/// Deglex on raw exponent slices of equal length.
pub fn deglex_cmp_slices(a: &[u32], b: &[u32]) -> Ordering {
    debug_assert_eq!(a.len(), b.len());
    let da: u64 = a.iter().map(|&e| u64::from(e)).sum();
    let db: u64 = b.iter().map(|&e| u64::from(e)).sum();
    da.cmp(&db)
        .then_with(|| a.iter().rev().cmp(b.iter().rev()))
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        let mut first = true;
        for (i, &e) in self.0.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            if e == 1 {
                write!(f, "x{}", i + 1)?;
            } else {
                write!(f, "x{}^{}", i + 1, e)?;
            }
        }
        Ok(())
    }
}

/// Base-`q` code of an exponent vector with all entries `< q`
/// (`x_1` is the least significant digit).
pub fn box_code(exps: &[u32], q: u64) -> u64 {
    exps.iter()
        .rev()
        .fold(0u64, |acc, &e| acc * q + u64::from(e))
}

pub fn box_decode(mut code: u64, q: u64, nvars: usize) -> Vec<u32> {
    let mut e = Vec::with_capacity(nvars);
    for _ in 0..nvars {
        e.push((code % q) as u32);
        code /= q;
    }
    e
}

/// Streams the monomials with every exponent `< q` in decreasing deglex
/// order, starting from `prod x_i^{q-1}` and ending at `1`.
pub struct DeglexDescending {
    q: u32,
    nvars: usize,
    degree: u64,
    // Exponents in reading order: position 0 holds x_m.
    current: Option<Vec<u32>>,
}

impl DeglexDescending {
    pub fn new(q: u32, nvars: usize) -> Self {
        assert!(q >= 1);
        let degree = nvars as u64 * u64::from(q - 1);
        let mut it = DeglexDescending {
            q,
            nvars,
            degree,
            current: None,
        };
        it.current = Some(it.greedy(degree, nvars));
        it
    }

    fn greedy(&self, mut total: u64, len: usize) -> Vec<u32> {
        let mut out = Vec::with_capacity(len);
        for _ in 0..len {
            let e = total.min(u64::from(self.q - 1));
            out.push(e as u32);
            total -= e;
        }
        out
    }

    fn advance(&mut self, r: &[u32]) -> Option<Vec<u32>> {
        let cap = u64::from(self.q - 1);
        let n = self.nvars;
        let mut suffix: u64 = 0;
        if n > 0 {
            suffix = u64::from(r[n - 1]);
        }
        for j in (0..n.saturating_sub(1)).rev() {
            let room = (n - 1 - j) as u64 * cap - suffix;
            if r[j] > 0 && room >= 1 {
                let mut next = r[..j].to_vec();
                next.push(r[j] - 1);
                next.extend(self.greedy(suffix + 1, n - 1 - j));
                return Some(next);
            }
            suffix += u64::from(r[j]);
        }
        if self.degree == 0 {
            return None;
        }
        self.degree -= 1;
        Some(self.greedy(self.degree, n))
    }
}

impl Iterator for DeglexDescending {
    type Item = Monomial;

    fn next(&mut self) -> Option<Monomial> {
        let r = self.current.take()?;
        self.current = self.advance(&r);
        let mut exps = r;
        exps.reverse();
        Some(Monomial(exps))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn m(e: &[u32]) -> Monomial {
        Monomial::new(e.to_vec())
    }

    #[test]
    fn deglex_examples() {
        assert_eq!(m(&[0, 1, 0]).deglex_cmp(&m(&[0, 0, 1])).unwrap(), Ordering::Less);
        assert_eq!(m(&[2, 0, 0]).deglex_cmp(&m(&[0, 1, 0])).unwrap(), Ordering::Greater);
        assert_eq!(m(&[1, 0, 1]).deglex_cmp(&m(&[0, 2, 0])).unwrap(), Ordering::Greater);
        assert_eq!(m(&[1, 1]).deglex_cmp(&m(&[1, 1])).unwrap(), Ordering::Equal);
        assert!(m(&[1]).deglex_cmp(&m(&[1, 0])).is_err());
    }

    #[test]
    fn divisibility_examples() {
        assert!(m(&[1, 0]).divides(&m(&[1, 1])));
        assert!(!m(&[2, 0]).divides(&m(&[1, 1])));
        assert_eq!(m(&[0, 1, 2]).div(&m(&[0, 0, 1])).unwrap(), m(&[0, 1, 1]));
        assert!(m(&[0, 1, 2]).div(&m(&[1, 0, 0])).is_err());
        assert_eq!(m(&[1, 0, 2]).to_string(), "x1*x3^2");
        assert_eq!(m(&[0, 0]).to_string(), "1");
    }

    #[test]
    fn descending_stream_matches_sort() {
        for (q, n) in [(1u32, 3usize), (2, 3), (3, 2), (3, 4), (4, 3), (2, 1), (5, 2)] {
            let streamed: Vec<Monomial> = DeglexDescending::new(q, n).collect();
            let total = (q as u64).pow(n as u32);
            let mut all: Vec<Monomial> = (0..total)
                .map(|c| Monomial::new(box_decode(c, q as u64, n)))
                .collect();
            all.sort_by(|a, b| b.deglex_cmp(a).unwrap());
            assert_eq!(streamed, all, "q={q} n={n}");
        }
    }

    #[test]
    fn box_code_roundtrip() {
        let e = vec![3, 0, 2, 1];
        assert_eq!(box_decode(box_code(&e, 4), 4, 4), e);
    }

    fn triple() -> impl Strategy<Value = (Vec<u32>, Vec<u32>, Vec<u32>)> {
        (1usize..5).prop_flat_map(|n| {
            (
                prop::collection::vec(0u32..4, n),
                prop::collection::vec(0u32..4, n),
                prop::collection::vec(0u32..4, n),
            )
        })
    }

    proptest! {
        #[test]
        fn deglex_is_total_order((a, b, c) in triple()) {
            let (a, b, c) = (m(&a), m(&b), m(&c));
            let ab = a.deglex_cmp(&b).unwrap();
            prop_assert_eq!(ab, b.deglex_cmp(&a).unwrap().reverse());
            prop_assert_eq!(ab == Ordering::Equal, a == b);
            if ab != Ordering::Greater && b.deglex_cmp(&c).unwrap() != Ordering::Greater {
                prop_assert_ne!(a.deglex_cmp(&c).unwrap(), Ordering::Greater);
            }
        }

        #[test]
        fn deglex_is_multiplicative((a, b, c) in triple()) {
            let (a, b, c) = (m(&a), m(&b), m(&c));
            let before = a.deglex_cmp(&b).unwrap();
            let after = a.mul(&c).unwrap().deglex_cmp(&b.mul(&c).unwrap()).unwrap();
            prop_assert_eq!(before, after);
        }

        #[test]
        fn divisor_is_not_larger((a, b, _c) in triple()) {
            let (a, b) = (m(&a), m(&b));
            let prod = a.mul(&b).unwrap();
            prop_assert!(a.divides(&prod));
            prop_assert_ne!(a.deglex_cmp(&prod).unwrap(), Ordering::Greater);
        }
    }
}
