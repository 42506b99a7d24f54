//! Plain-text instance and solution files.
//!
//! ```text
//! RECUR2D 1
//! n <N>
//! mode <exact|f64>
//! A
//! <N lines of N scalars, row i holds a[i][1..=N]>
//! B
//! ...
//! C
//! ...
//! C0J
//! <N scalars: c[0][1..=N]>
//! CI0
//! <N scalars: c[1..=N][0]>
//! ```
//!
//! Lines starting with `#` are comments and blank lines are ignored. Exact
//! scalars are written `p/q` (or `p` when the denominator is 1); f64 scalars
//! use the shortest decimal that round-trips bit for bit. A solution file is
//! just `N` lines of `N` scalars.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::generate::generate_instance;
use crate::problem::{GridSolution, RecurrenceProblem};
use crate::scalar::{Rational, Scalar, ScalarMode};

pub const MAGIC: &str = "RECUR2D 1";

/// A problem in whichever scalar mode its file declared.
#[derive(Debug, Clone, PartialEq)]
pub enum AnyProblem {
    Exact(RecurrenceProblem<Rational>),
    Approx(RecurrenceProblem<f64>),
}

impl AnyProblem {
    pub fn generate(n: usize, seed: u64, mode: ScalarMode) -> Result<Self> {
        Ok(match mode {
            ScalarMode::Exact => AnyProblem::Exact(generate_instance(n, seed)?),
            ScalarMode::Approx => AnyProblem::Approx(generate_instance(n, seed)?),
        })
    }

    pub fn mode(&self) -> ScalarMode {
        match self {
            AnyProblem::Exact(_) => ScalarMode::Exact,
            AnyProblem::Approx(_) => ScalarMode::Approx,
        }
    }

    pub fn n(&self) -> usize {
        match self {
            AnyProblem::Exact(p) => p.n(),
            AnyProblem::Approx(p) => p.n(),
        }
    }

    pub fn to_text(&self) -> String {
        match self {
            AnyProblem::Exact(p) => serialize_instance(p),
            AnyProblem::Approx(p) => serialize_instance(p),
        }
    }
}

fn push_row<'a, S: Scalar>(out: &mut String, row: impl IntoIterator<Item = &'a S>) {
    let tokens: Vec<String> = row.into_iter().map(Scalar::format_token).collect();
    let _ = writeln!(out, "{}", tokens.join(" "));
}

pub fn serialize_instance<S: Scalar>(p: &RecurrenceProblem<S>) -> String {
    let n = p.n();
    let mut out = format!("{MAGIC}\nn {n}\nmode {}\n", S::MODE);
    for (tag, grid) in [("A", p.a_grid()), ("B", p.b_grid()), ("C", p.c_grid())] {
        let _ = writeln!(out, "{tag}");
        for row in grid.chunks(n) {
            push_row(&mut out, row);
        }
    }
    let _ = writeln!(out, "C0J");
    push_row(&mut out, p.top_boundary());
    let _ = writeln!(out, "CI0");
    push_row(&mut out, p.left_boundary());
    out
}

pub fn serialize_solution<S: Scalar>(s: &GridSolution<S>) -> String {
    let mut out = String::new();
    for row in s.values().chunks(s.n()) {
        push_row(&mut out, row);
    }
    out
}

/// Non-comment, non-blank lines with their one-based line numbers.
struct Lines<'a> {
    inner: Box<dyn Iterator<Item = (usize, &'a str)> + 'a>,
    last: usize,
}

impl<'a> Lines<'a> {
    fn new(text: &'a str) -> Self {
        let inner = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
        Lines {
            inner: Box::new(inner),
            last: 0,
        }
    }

    fn next_line(&mut self, what: &str) -> Result<(usize, &'a str)> {
        match self.inner.next() {
            Some((no, l)) => {
                self.last = no;
                Ok((no, l))
            }
            None => Err(Error::Parse {
                line: self.last + 1,
                msg: format!("unexpected end of input, expected {what}"),
            }),
        }
    }

    fn expect_literal(&mut self, literal: &str) -> Result<()> {
        let (no, l) = self.next_line(literal)?;
        if l != literal {
            return Err(Error::Parse {
                line: no,
                msg: format!("expected `{literal}`, found `{l}`"),
            });
        }
        Ok(())
    }

    fn keyed(&mut self, key: &str) -> Result<(usize, &'a str)> {
        let (no, l) = self.next_line(key)?;
        match l.split_once(char::is_whitespace) {
            Some((k, v)) if k == key => Ok((no, v.trim())),
            _ => Err(Error::Parse {
                line: no,
                msg: format!("expected `{key} <value>`, found `{l}`"),
            }),
        }
    }

    fn row<S: Scalar>(&mut self, n: usize, what: &str) -> Result<Vec<S>> {
        let (no, l) = self.next_line(what)?;
        parse_row(no, l, n)
    }

    fn finish(mut self) -> Result<()> {
        match self.inner.next() {
            None => Ok(()),
            Some((no, l)) => Err(Error::Parse {
                line: no,
                msg: format!("trailing content `{l}`"),
            }),
        }
    }
}

fn parse_row<S: Scalar>(line: usize, text: &str, n: usize) -> Result<Vec<S>> {
    let row = text
        .split_whitespace()
        .map(S::parse_token)
        .collect::<std::result::Result<Vec<S>, String>>()
        .map_err(|msg| Error::Parse { line, msg })?;
    if row.len() != n {
        return Err(Error::Parse {
            line,
            msg: format!("expected {n} scalars, found {}", row.len()),
        });
    }
    Ok(row)
}

fn parse_body<S: Scalar>(lines: &mut Lines<'_>, n: usize) -> Result<RecurrenceProblem<S>> {
    let mut grids = Vec::with_capacity(3);
    for tag in ["A", "B", "C"] {
        lines.expect_literal(tag)?;
        let mut grid = Vec::with_capacity(n * n);
        for _ in 0..n {
            grid.extend(lines.row::<S>(n, tag)?);
        }
        grids.push(grid);
    }
    lines.expect_literal("C0J")?;
    let c0j = lines.row(n, "C0J")?;
    lines.expect_literal("CI0")?;
    let ci0 = lines.row(n, "CI0")?;
    let c = grids.pop().unwrap_or_default();
    let b = grids.pop().unwrap_or_default();
    let a = grids.pop().unwrap_or_default();
    RecurrenceProblem::new(n, a, b, c, c0j, ci0)
}

pub fn parse_instance(text: &str) -> Result<AnyProblem> {
    let mut lines = Lines::new(text);
    lines.expect_literal(MAGIC)?;
    let (no, n) = lines.keyed("n")?;
    let n: usize = n.parse().map_err(|e| Error::Parse {
        line: no,
        msg: format!("bad grid side `{n}`: {e}"),
    })?;
    if n == 0 {
        return Err(Error::NonPositiveN);
    }
    let (no, mode) = lines.keyed("mode")?;
    let mode: ScalarMode = mode.parse().map_err(|msg| Error::Parse { line: no, msg })?;
    let problem = match mode {
        ScalarMode::Exact => AnyProblem::Exact(parse_body(&mut lines, n)?),
        ScalarMode::Approx => AnyProblem::Approx(parse_body(&mut lines, n)?),
    };
    lines.finish()?;
    Ok(problem)
}

pub fn parse_solution<S: Scalar>(text: &str) -> Result<GridSolution<S>> {
    let rows: Vec<(usize, &str)> = Lines::new(text).inner.collect();
    let n = rows.len();
    let mut w = Vec::with_capacity(n * n);
    for (no, l) in rows {
        w.extend(parse_row::<S>(no, l, n)?);
    }
    GridSolution::from_rows(n, w)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::ratio;

    #[test]
    fn single_cell_layout() {
        let p = RecurrenceProblem::new(1, vec![0.0], vec![0.0], vec![5.0], vec![0.5], vec![-2.0]).unwrap();
        assert_eq!(
            serialize_instance(&p),
            "RECUR2D 1\nn 1\nmode f64\nA\n0.0\nB\n0.0\nC\n5.0\nC0J\n0.5\nCI0\n-2.0\n"
        );
    }

    #[test]
    fn hand_written_exact_instance_with_comments() {
        let text = "# hand written\nRECUR2D 1\nn 2\nmode exact\nA\n1 1/2\n# mid-block comment\n0 1\nB\n1 1\n1 1\nC\n-3/4 0\n0 2\n\nC0J\n1 1\nCI0\n1 1\n";
        let AnyProblem::Exact(p) = parse_instance(text).unwrap() else {
            panic!("expected exact mode");
        };
        assert_eq!(*p.a(1, 2), ratio(1, 2));
        assert_eq!(*p.c(1, 1), ratio(-3, 4));
        assert_eq!(*p.c(2, 2), ratio(2, 1));
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        let bad_magic = "RECUR2D 2\n";
        assert!(matches!(parse_instance(bad_magic), Err(Error::Parse { line: 1, .. })));
        let short_row = "RECUR2D 1\nn 2\nmode f64\nA\n1 2\n3\n";
        assert!(matches!(parse_instance(short_row), Err(Error::Parse { line: 6, .. })));
        let bad_mode = "RECUR2D 1\nn 2\nmode f32\n";
        assert!(matches!(parse_instance(bad_mode), Err(Error::Parse { line: 3, .. })));
        let truncated = "RECUR2D 1\nn 1\nmode f64\nA\n1\n";
        assert!(matches!(parse_instance(truncated), Err(Error::Parse { .. })));
        let zero = "RECUR2D 1\nn 0\nmode f64\n";
        assert_eq!(parse_instance(zero), Err(Error::NonPositiveN));
        let p = AnyProblem::generate(2, 1, ScalarMode::Approx).unwrap();
        let trailing = p.to_text() + "extra\n";
        assert!(matches!(parse_instance(&trailing), Err(Error::Parse { .. })));
    }

    #[test]
    fn solution_round_trip() {
        let s = GridSolution::from_rows(2, vec![ratio(3, 1), ratio(-5, 2), ratio(0, 1), ratio(11, 7)]).unwrap();
        let text = serialize_solution(&s);
        assert_eq!(text, "3 -5/2\n0 11/7\n");
        assert_eq!(parse_solution::<Rational>(&text).unwrap(), s);
        assert!(parse_solution::<f64>("1 2\n3\n").is_err());
    }
}
