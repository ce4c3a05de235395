//! Brute-force colength and per-monomial membership by elimination over `F_p`.
//!
//! The quotient `S/m^[q]` has basis 𝔐, the `q^m` monomials with every
//! exponent `< q`. The image of `(f)` is spanned by the rows `g * f`, `g` in
//! 𝔐, with monomials outside 𝔐 deleted. With 𝔐 ordered by deglex, `A` lies in
//! `A_c + (f)` (where `A_c` holds everything strictly above `A`) exactly when
//! some vector of the row span has `A` as its smallest monomial, i.e. when `A`
//! is a pivot of an echelon basis whose pivots are leading (smallest) columns.
//!
//! The rows only ever link `B` with `B + t_i - t_j`, so the coordinate space
//! splits into connected components that are eliminated independently.

use thiserror::Error;

use crate::algebra::{box_code, box_decode, deglex_cmp_slices, DeglexDescending, TermLabel, Trinomial};
use crate::field::{EchelonBasis, FpMatrix};

/// Default cap on `q^m` for oracle work.
pub const DEFAULT_BUDGET: u64 = 1 << 20;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OracleError {
    #[error("oracle needs q^m = {required} basis monomials, above the budget of {budget}")]
    BudgetExceeded { required: u128, budget: u64 },
    #[error("monomial has {actual} exponents, expected {expected}")]
    WrongArity { expected: usize, actual: usize },
    #[error("exponent {exponent} is not below q = {q}")]
    OutOfBox { exponent: u32, q: u64 },
}

/// `q^m`, or a budget error.
pub fn box_size(q: u64, nvars: usize, budget: u64) -> Result<u64, OracleError> {
    let required = (q as u128).checked_pow(nvars as u32).unwrap_or(u128::MAX);
    if required > u128::from(budget) {
        return Err(OracleError::BudgetExceeded { required, budget });
    }
    Ok(required as u64)
}

/// `p^n` as `u64`, saturating.
pub fn prime_power(p: u32, n: u32) -> u64 {
    u64::from(p).saturating_pow(n)
}

/// 𝔐 indexed in decreasing deglex: index 0 is `prod x_i^(q-1)`, the last
/// index is `1`. Monomials are also addressed by their base-`q` box code.
pub struct QuotientBasis {
    q: u64,
    nvars: usize,
    desc: Vec<u32>,
    index_of_code: Vec<u32>,
}

impl QuotientBasis {
    pub fn new(q: u64, nvars: usize, budget: u64) -> Result<Self, OracleError> {
        let size = box_size(q, nvars, budget)? as usize;
        let q32 = u32::try_from(q).expect("q within budget fits u32");
        let mut desc = Vec::with_capacity(size);
        let mut index_of_code = vec![0u32; size];
        for (i, mono) in DeglexDescending::new(q32, nvars).enumerate() {
            let code = box_code(mono.exponents(), q) as u32;
            desc.push(code);
            index_of_code[code as usize] = i as u32;
        }
        Ok(QuotientBasis {
            q,
            nvars,
            desc,
            index_of_code,
        })
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn len(&self) -> usize {
        self.desc.len()
    }

    pub fn is_empty(&self) -> bool {
        self.desc.is_empty()
    }

    pub fn monomial(&self, index: usize) -> Vec<u32> {
        box_decode(u64::from(self.desc[index]), self.q, self.nvars)
    }

    pub fn code(&self, index: usize) -> u64 {
        u64::from(self.desc[index])
    }

    pub fn index_of(&self, exps: &[u32]) -> Result<usize, OracleError> {
        self.check(exps)?;
        Ok(self.index_of_code[box_code(exps, self.q) as usize] as usize)
    }

    /// Increasing-deglex position of a box code.
    fn ascending_pos(&self, code: usize) -> usize {
        self.desc.len() - 1 - self.index_of_code[code] as usize
    }

    fn check(&self, exps: &[u32]) -> Result<(), OracleError> {
        if exps.len() != self.nvars {
            return Err(OracleError::WrongArity {
                expected: self.nvars,
                actual: exps.len(),
            });
        }
        if let Some(&e) = exps.iter().find(|&&e| u64::from(e) >= self.q) {
            return Err(OracleError::OutOfBox { exponent: e, q: self.q });
        }
        Ok(())
    }
}

/// The truncated rows `g * f` as `(column code, coefficient)` lists.
struct Rows {
    entries: Vec<[(u32, u32); 3]>,
    lens: Vec<u8>,
}

fn truncated_rows(f: &Trinomial, q: u64) -> Rows {
    let m = f.nvars();
    let size = (q as usize).pow(m as u32);
    let terms: Vec<(Vec<u32>, u32)> = f
        .terms()
        .iter()
        .map(|t| (t.monomial().exponents().to_vec(), t.coefficient().value()))
        .collect();
    let mut entries = Vec::with_capacity(size);
    let mut lens = Vec::with_capacity(size);
    let mut g = vec![0u32; m];
    for _ in 0..size {
        let mut row = [(0u32, 0u32); 3];
        let mut len = 0;
        for (t, c) in &terms {
            let mut code = 0u64;
            let mut inside = true;
            for v in (0..m).rev() {
                let e = u64::from(g[v] + t[v]);
                if e >= q {
                    inside = false;
                    break;
                }
                code = code * q + e;
            }
            if inside {
                row[len] = (code as u32, *c);
                len += 1;
            }
        }
        entries.push(row);
        lens.push(len as u8);
        for e in g.iter_mut() {
            *e += 1;
            if u64::from(*e) < q {
                break;
            }
            *e = 0;
        }
    }
    Rows { entries, lens }
}

fn find(parent: &mut [u32], mut x: u32) -> u32 {
    while parent[x as usize] != x {
        let up = parent[parent[x as usize] as usize];
        parent[x as usize] = up;
        x = up;
    }
    x
}

/// Components of the coordinate graph: `comp[code]` is a dense component id.
fn components(rows: &Rows, size: usize) -> (Vec<u32>, usize) {
    let mut parent: Vec<u32> = (0..size as u32).collect();
    for (row, &len) in rows.entries.iter().zip(&rows.lens) {
        for w in 1..len as usize {
            let (a, b) = (find(&mut parent, row[0].0), find(&mut parent, row[w].0));
            if a != b {
                parent[a.max(b) as usize] = a.min(b);
            }
        }
    }
    let mut id = vec![u32::MAX; size];
    let mut comp = vec![0u32; size];
    let mut count = 0;
    for code in 0..size as u32 {
        let r = find(&mut parent, code) as usize;
        if id[r] == u32::MAX {
            id[r] = count;
            count += 1;
        }
        comp[code as usize] = id[r];
    }
    (comp, count as usize)
}

/// Per-component column maps: `local[code]` is the column of `code` inside
/// its component, with columns numbered in the order codes are visited.
fn local_columns(order: impl Iterator<Item = usize>, comp: &[u32], ncomp: usize) -> (Vec<u32>, Vec<usize>) {
    let mut local = vec![0u32; comp.len()];
    let mut widths = vec![0usize; ncomp];
    for code in order {
        let c = comp[code] as usize;
        local[code] = widths[c] as u32;
        widths[c] += 1;
    }
    (local, widths)
}

fn rows_by_component(rows: &Rows, comp: &[u32], ncomp: usize) -> Vec<Vec<u32>> {
    let mut by = vec![Vec::new(); ncomp];
    for (g, &len) in rows.lens.iter().enumerate() {
        if len > 0 {
            by[comp[rows.entries[g][0].0 as usize] as usize].push(g as u32);
        }
    }
    by
}

/// Membership of every monomial of 𝔐 in `A_c + (f)`.
pub struct MemberSet {
    q: u64,
    nvars: usize,
    member_by_code: Vec<bool>,
    members: u64,
    components: usize,
}

impl MemberSet {
    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn member(&self, exps: &[u32]) -> bool {
        self.member_by_code[box_code(exps, self.q) as usize]
    }

    pub fn member_code(&self, code: u64) -> bool {
        self.member_by_code[code as usize]
    }

    pub fn member_count(&self) -> u64 {
        self.members
    }

    /// `#{A in 𝔐 : A not in A_c + (f)}`.
    pub fn non_member_count(&self) -> u64 {
        self.member_by_code.len() as u64 - self.members
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn component_count(&self) -> usize {
        self.components
    }
}

/// One elimination pass deciding membership for all of 𝔐.
pub fn member_set(f: &Trinomial, q: u64, budget: u64) -> Result<MemberSet, OracleError> {
    let basis = QuotientBasis::new(q, f.nvars(), budget)?;
    let size = basis.len();
    let rows = truncated_rows(f, q);
    let (comp, ncomp) = components(&rows, size);
    let ascending = (0..size).rev().map(|i| basis.desc[i] as usize);
    let (local, widths) = local_columns(ascending, &comp, ncomp);
    let by = rows_by_component(&rows, &comp, ncomp);
    let p = f.prime();
    let mut member_by_code = vec![false; size];
    let mut members = 0;
    let mut codes_of: Vec<Vec<u32>> = widths.iter().map(|&w| Vec::with_capacity(w)).collect();
    for i in (0..size).rev() {
        let code = basis.desc[i];
        codes_of[comp[code as usize] as usize].push(code);
    }
    let mut sparse = Vec::with_capacity(3);
    for c in 0..ncomp {
        if by[c].is_empty() {
            continue;
        }
        let mut eb = EchelonBasis::new(p, widths[c]);
        for &g in &by[c] {
            let g = g as usize;
            sparse.clear();
            sparse.extend(
                rows.entries[g][..rows.lens[g] as usize]
                    .iter()
                    .map(|&(code, v)| (local[code as usize] as usize, v)),
            );
            eb.insert_sparse(&sparse);
        }
        for &col in eb.pivots() {
            member_by_code[codes_of[c][col] as usize] = true;
            members += 1;
        }
    }
    Ok(MemberSet {
        q,
        nvars: f.nvars(),
        member_by_code,
        members,
        components: ncomp,
    })
}

/// `dim S/(m^[q] + (f)) = q^m - rank`, with columns in box-code order.
pub fn global_dimension_q(f: &Trinomial, q: u64, budget: u64) -> Result<u64, OracleError> {
    let size = box_size(q, f.nvars(), budget)? as usize;
    let rows = truncated_rows(f, q);
    let (comp, ncomp) = components(&rows, size);
    let (local, widths) = local_columns(0..size, &comp, ncomp);
    let by = rows_by_component(&rows, &comp, ncomp);
    let p = f.prime();
    let mut rank = 0u64;
    let mut sparse = Vec::with_capacity(3);
    for c in 0..ncomp {
        if by[c].is_empty() {
            continue;
        }
        let mut eb = EchelonBasis::new(p, widths[c]);
        for &g in &by[c] {
            let g = g as usize;
            sparse.clear();
            sparse.extend(
                rows.entries[g][..rows.lens[g] as usize]
                    .iter()
                    .map(|&(code, v)| (local[code as usize] as usize, v)),
            );
            eb.insert_sparse(&sparse);
        }
        rank += eb.rank() as u64;
    }
    Ok(size as u64 - rank)
}

/// Colength at `q = p^n`.
pub fn global_dimension(f: &Trinomial, n: u32, budget: u64) -> Result<u64, OracleError> {
    global_dimension_q(f, prime_power(f.prime().get(), n), budget)
}

/// Whether `A` lies in `A_c + (f)` at `q = p^n` (runs the full sweep).
pub fn member(a: &[u32], f: &Trinomial, n: u32, budget: u64) -> Result<bool, OracleError> {
    let q = prime_power(f.prime().get(), n);
    let set = member_set(f, q, budget)?;
    QuotientBasis::new(q, f.nvars(), budget)?.check(a)?;
    Ok(set.member(a))
}

/// From-scratch membership test: project every row onto the monomials
/// `<= A` and ask whether `e_A` lies in the row span. Dense; for tests.
pub fn member_direct(a: &[u32], f: &Trinomial, q: u64, budget: u64) -> Result<bool, OracleError> {
    let basis = QuotientBasis::new(q, f.nvars(), budget)?;
    basis.check(a)?;
    let size = basis.len();
    let cut = basis.ascending_pos(box_code(a, q) as usize);
    let cols = cut + 1;
    let p = f.prime();
    let mut rows: Vec<Vec<u64>> = Vec::new();
    for g in 0..size as u64 {
        let ge = box_decode(g, q, f.nvars());
        let mut row = vec![0u64; cols];
        let mut any = false;
        for label in TermLabel::ALL {
            let t = f.term(label);
            let e: Vec<u32> = ge
                .iter()
                .zip(t.monomial().exponents())
                .map(|(x, y)| x + y)
                .collect();
            if e.iter().any(|&x| u64::from(x) >= q) {
                continue;
            }
            if deglex_cmp_slices(&e, a) == std::cmp::Ordering::Greater {
                continue;
            }
            let pos = basis.ascending_pos(box_code(&e, q) as usize);
            row[pos] = (row[pos] + u64::from(t.coefficient().value())) % u64::from(p.get());
            any = true;
        }
        if any {
            rows.push(row);
        }
    }
    let m = FpMatrix::from_rows(p, cols, &rows).expect("uniform width");
    let before = m.rank();
    let mut target = vec![0u64; cols];
    target[cut] = 1;
    rows.push(target);
    let m = FpMatrix::from_rows(p, cols, &rows).expect("uniform width");
    Ok(m.rank() == before)
}
