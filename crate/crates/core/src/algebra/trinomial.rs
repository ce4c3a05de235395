use std::cmp::Ordering;
use std::fmt;

use crate::field::{FpScalar, Prime};

use super::{AlgebraError, Monomial, ParseError};

/// A nonzero coefficient times a non-constant monomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Term {
    coefficient: FpScalar,
    monomial: Monomial,
}

impl Term {
    pub fn coefficient(&self) -> FpScalar {
        self.coefficient
    }

    pub fn monomial(&self) -> &Monomial {
        &self.monomial
    }
}

/// Index of a term of `f = [3] + [2] + [1]`, ordered `[1] < [2] < [3]` in deglex.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TermLabel {
    One,
    Two,
    Three,
}

impl TermLabel {
    pub const ALL: [TermLabel; 3] = [TermLabel::One, TermLabel::Two, TermLabel::Three];

    fn index(self) -> usize {
        match self {
            TermLabel::One => 0,
            TermLabel::Two => 1,
            TermLabel::Three => 2,
        }
    }
}

/// A disjoint-term trinomial over `F_p`.
///
/// The three monomials have pairwise disjoint supports and are stored in
/// strictly increasing deglex order, so `term(One)` is `[1]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Trinomial {
    p: Prime,
    terms: [Term; 3],
}

impl Trinomial {
    /// Validates and labels three `(coefficient, monomial)` pairs.
    pub fn from_terms(p: Prime, terms: [(u64, Monomial); 3]) -> Result<Self, AlgebraError> {
        let nvars = terms.iter().map(|(_, m)| m.nvars()).max().unwrap_or(0);
        let mut out = Vec::with_capacity(3);
        for (i, (c, mono)) in terms.into_iter().enumerate() {
            let mut exps = mono.exponents().to_vec();
            exps.resize(nvars, 0);
            let mono = Monomial::new(exps);
            if mono.is_one() {
                return Err(ParseError::ConstantTerm { term: i + 1 }.into());
            }
            let coefficient = p.scalar(c);
            if coefficient.is_zero() {
                return Err(ParseError::ZeroCoefficient {
                    term: i + 1,
                    coefficient: c,
                    p: p.get(),
                }
                .into());
            }
            out.push((i + 1, Term { coefficient, monomial: mono }));
        }
        for a in 0..3 {
            for b in a + 1..3 {
                let (ma, mb) = (&out[a].1.monomial, &out[b].1.monomial);
                if let Some(v) = ma.support().find(|&v| mb.exponents()[v] > 0) {
                    return Err(ParseError::SharedVariable {
                        first: out[a].0,
                        second: out[b].0,
                        var: v + 1,
                    }
                    .into());
                }
            }
        }
        out.sort_by(|a, b| deglex(&a.1.monomial, &b.1.monomial));
        let mut it = out.into_iter().map(|(_, t)| t);
        let terms = [it.next().unwrap(), it.next().unwrap(), it.next().unwrap()];
        Ok(Trinomial { p, terms })
    }

    /// Parses `poly := term ('+' term)*`, `term := [int '*'] factor ('*' factor)*`,
    /// `factor := 'x' index ['^' exp]`, ignoring whitespace.
    pub fn parse(text: &str, p: Prime) -> Result<Self, ParseError> {
        let raw = Parser::new(text).poly()?;
        if raw.len() != 3 {
            return Err(ParseError::TermCount(raw.len()));
        }
        let nvars = raw
            .iter()
            .flat_map(|(_, f)| f.iter().map(|&(v, _)| v))
            .max()
            .unwrap_or(0);
        let mut terms = Vec::with_capacity(3);
        for (c, factors) in raw {
            let mut e = vec![0u32; nvars];
            for (v, x) in factors {
                e[v - 1] = e[v - 1].checked_add(x).ok_or(ParseError::ExponentOverflow)?;
            }
            terms.push((c, Monomial::new(e)));
        }
        let mut it = terms.into_iter();
        let arr = [it.next().unwrap(), it.next().unwrap(), it.next().unwrap()];
        Trinomial::from_terms(p, arr).map_err(|e| match e {
            AlgebraError::Parse(pe) => pe,
            other => ParseError::Syntax {
                pos: 0,
                msg: other.to_string(),
            },
        })
    }

    pub fn prime(&self) -> Prime {
        self.p
    }

    /// Number of ring variables `m` (highest variable index present).
    pub fn nvars(&self) -> usize {
        self.terms[0].monomial.nvars()
    }

    pub fn term(&self, label: TermLabel) -> &Term {
        &self.terms[label.index()]
    }

    pub fn monomial(&self, label: TermLabel) -> &Monomial {
        &self.terms[label.index()].monomial
    }

    pub fn terms(&self) -> &[Term; 3] {
        &self.terms
    }

    /// Same monomials with coefficients replaced (in label order).
    pub fn with_coefficients(&self, coefficients: [u64; 3]) -> Result<Self, AlgebraError> {
        let [a, b, c] = coefficients;
        Trinomial::from_terms(
            self.p,
            [
                (a, self.terms[0].monomial.clone()),
                (b, self.terms[1].monomial.clone()),
                (c, self.terms[2].monomial.clone()),
            ],
        )
    }

    /// True iff some exponent of every term is at least `q`, i.e. `f` lies in
    /// the Frobenius power of the maximal ideal.
    pub fn vanishes_mod_frobenius(&self, q: u64) -> bool {
        self.terms
            .iter()
            .all(|t| t.monomial.exponents().iter().any(|&e| u64::from(e) >= q))
    }
}

fn deglex(a: &Monomial, b: &Monomial) -> Ordering {
    a.deglex_cmp(b).expect("terms padded to a common variable count")
}

impl fmt::Display for Trinomial {
    /// Canonical form `[1] + [2] + [3]`, unit coefficients omitted.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, t) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            if t.coefficient.value() != 1 {
                write!(f, "{}*", t.coefficient.value())?;
            }
            write!(f, "{}", t.monomial)?;
        }
        Ok(())
    }
}

type RawTerm = (u64, Vec<(usize, u32)>);

struct Parser<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(text: &'a str) -> Self {
        Parser {
            bytes: text.as_bytes(),
            pos: 0,
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.bytes.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn err(&self, msg: impl Into<String>) -> ParseError {
        ParseError::Syntax {
            pos: self.pos,
            msg: msg.into(),
        }
    }

    fn int(&mut self) -> Result<u64, ParseError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected an integer"));
        }
        std::str::from_utf8(&self.bytes[start..self.pos])
            .unwrap()
            .parse()
            .map_err(|_| self.err("integer out of range"))
    }

    fn poly(&mut self) -> Result<Vec<RawTerm>, ParseError> {
        let mut terms = vec![self.term(1)?];
        while self.eat(b'+') {
            terms.push(self.term(terms.len() + 1)?);
        }
        if self.peek().is_some() {
            return Err(self.err(format!(
                "unexpected character '{}'",
                self.bytes[self.pos] as char
            )));
        }
        Ok(terms)
    }

    fn term(&mut self, index: usize) -> Result<RawTerm, ParseError> {
        let mut coeff = 1u64;
        if matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            coeff = self.int()?;
            if !self.eat(b'*') {
                return match self.peek() {
                    None | Some(b'+') => Err(ParseError::ConstantTerm { term: index }),
                    _ => Err(self.err("expected '*' after coefficient")),
                };
            }
        }
        let mut factors = vec![self.factor()?];
        while self.eat(b'*') {
            factors.push(self.factor()?);
        }
        Ok((coeff, factors))
    }

    fn factor(&mut self) -> Result<(usize, u32), ParseError> {
        if !self.eat(b'x') {
            return Err(self.err("expected a variable x<index>"));
        }
        let idx = self.int()?;
        if idx == 0 {
            return Err(ParseError::VariableIndexZero);
        }
        let idx = usize::try_from(idx).map_err(|_| self.err("variable index out of range"))?;
        let mut exp = 1u32;
        if self.eat(b'^') {
            exp = u32::try_from(self.int()?).map_err(|_| ParseError::ExponentOverflow)?;
        }
        Ok((idx, exp))
    }
}
