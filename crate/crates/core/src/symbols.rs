//! Symbols of odd defect and the invariants attached to them.
//!
//! A symbol is a pair of rows `(X, Y)` of strictly increasing non-negative integers with
//! `#X - #Y` odd and positive, taken up to the shift `(X, Y) -> ({0} ∪ (X+1), {0} ∪ (Y+1))`.
//! [`Symbol`] always stores the reduced representative, the one for which `0` is not in
//! both rows, so derived equality and ordering are equality and ordering of classes.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Deserializer, Serialize};

use crate::error::{Error, Result};
use crate::exactq::{RatFunc, RatPoly};

/// A reduced symbol. Ordered lexicographically by `(X, Y)`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Symbol {
    #[serde(rename = "X")]
    x: Vec<u32>,
    #[serde(rename = "Y")]
    y: Vec<u32>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Row {
    First,
    Second,
}

impl Row {
    pub fn other(self) -> Row {
        match self {
            Row::First => Row::Second,
            Row::Second => Row::First,
        }
    }
}

/// A `length`-hook at entry `z` of `row`: `z - length` is absent from the same row.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Hook {
    pub row: Row,
    pub z: u32,
    pub length: u32,
    pub leg_length: u32,
}

/// A `length`-cohook at entry `z` of `row`: `z - length` is absent from the other row.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Cohook {
    pub row: Row,
    pub z: u32,
    pub length: u32,
}

/// Harish-Chandra series label: `θ = δ(δ+1) + a`, cuspidal pair `(L_δ, ρ_δ)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CuspidalSupport {
    pub delta: u32,
    pub a: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CoreInfo {
    pub core: Symbol,
    pub is_cuspidal: bool,
    pub support: CuspidalSupport,
}

fn strictly_increasing(row: &[u32]) -> bool {
    row.windows(2).all(|w| w[0] < w[1])
}

/// Strips common leading zeros: the inverse shift applied until it no longer applies.
fn unshift_fully(mut x: Vec<u32>, mut y: Vec<u32>) -> (Vec<u32>, Vec<u32>) {
    let mut k = 0;
    while k < x.len() && k < y.len() && x[k] == k as u32 && y[k] == k as u32 {
        k += 1;
    }
    if k > 0 {
        x = x[k..].iter().map(|v| v - k as u32).collect();
        y = y[k..].iter().map(|v| v - k as u32).collect();
    }
    (x, y)
}

fn validate_rows(x: &[u32], y: &[u32]) -> Result<()> {
    if !strictly_increasing(x) {
        return Err(Error::InvalidSymbol(format!(
            "first row {x:?} is not strictly increasing"
        )));
    }
    if !strictly_increasing(y) {
        return Err(Error::InvalidSymbol(format!(
            "second row {y:?} is not strictly increasing"
        )));
    }
    if x.len() <= y.len() || (x.len() - y.len()) % 2 == 0 {
        return Err(Error::InvalidSymbol(format!(
            "row length difference {} - {} must be odd and positive",
            x.len(),
            y.len()
        )));
    }
    Ok(())
}

/// Validates the rows and returns the reduced representative of their shift class.
pub fn reduce(x: Vec<u32>, y: Vec<u32>) -> Result<Symbol> {
    validate_rows(&x, &y)?;
    let (x, y) = unshift_fully(x, y);
    Ok(Symbol { x, y })
}

/// Like [`reduce`] but accepts signed input, rejecting negative entries.
pub fn reduce_signed(x: &[i64], y: &[i64]) -> Result<Symbol> {
    let conv = |row: &[i64], name: &str| -> Result<Vec<u32>> {
        row.iter()
            .map(|&v| {
                u32::try_from(v).map_err(|_| {
                    Error::InvalidSymbol(format!("{name} row has invalid entry {v}"))
                })
            })
            .collect()
    };
    reduce(conv(x, "first")?, conv(y, "second")?)
}

fn floor_div4(n: i64) -> i64 {
    n.div_euclid(4)
}

fn choose2(n: i64) -> i64 {
    if n < 2 {
        0
    } else {
        n * (n - 1) / 2
    }
}

impl Symbol {
    /// The symbol `(θ; —)` of the trivial representation.
    pub fn trivial(theta: u32) -> Symbol {
        Symbol {
            x: vec![theta],
            y: vec![],
        }
    }

    /// The Steinberg symbol `(0 … θ; 1 … θ)`.
    pub fn steinberg(theta: u32) -> Symbol {
        reduce((0..=theta).collect(), (1..=theta).collect()).expect("valid rows")
    }

    /// The cuspidal symbol `S_δ = (0 1 … 2δ; —)`.
    pub fn cuspidal(delta: u32) -> Symbol {
        Symbol {
            x: (0..=2 * delta).collect(),
            y: vec![],
        }
    }

    pub fn first(&self) -> &[u32] {
        &self.x
    }

    pub fn second(&self) -> &[u32] {
        &self.y
    }

    pub fn row(&self, row: Row) -> &[u32] {
        match row {
            Row::First => &self.x,
            Row::Second => &self.y,
        }
    }

    /// Total number of entries `#S`.
    pub fn len(&self) -> usize {
        self.x.len() + self.y.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Rows of the `times`-fold shift, unreduced.
    pub fn shifted(&self, times: u32) -> (Vec<u32>, Vec<u32>) {
        let sh = |row: &[u32]| -> Vec<u32> {
            (0..times).chain(row.iter().map(|v| v + times)).collect()
        };
        (sh(&self.x), sh(&self.y))
    }

    pub fn defect(&self) -> u32 {
        (self.x.len() - self.y.len()) as u32
    }

    pub fn rank(&self) -> u32 {
        rank_of_rows(&self.x, &self.y) as u32
    }

    pub fn rank_defect(&self) -> (u32, u32) {
        (self.rank(), self.defect())
    }

    pub fn hooks(&self) -> Vec<Hook> {
        let mut out = Vec::new();
        for row in [Row::First, Row::Second] {
            let entries = self.row(row);
            for &z in entries {
                for k in 1..=z {
                    let base = z - k;
                    if entries.binary_search(&base).is_err() {
                        let leg = entries.iter().filter(|&&s| base < s && s < z).count() as u32;
                        out.push(Hook {
                            row,
                            z,
                            length: k,
                            leg_length: leg,
                        });
                    }
                }
            }
        }
        out
    }

    pub fn cohooks(&self) -> Vec<Cohook> {
        let mut out = Vec::new();
        for row in [Row::First, Row::Second] {
            let other = self.row(row.other());
            for &z in self.row(row) {
                for k in 1..=z {
                    if other.binary_search(&(z - k)).is_err() {
                        out.push(Cohook { row, z, length: k });
                    }
                }
            }
        }
        out
    }

    pub fn hooks_and_cohooks(&self) -> (Vec<Hook>, Vec<Cohook>) {
        (self.hooks(), self.cohooks())
    }

    /// `a(S) = Σ_{pairs} min(s,t) - Σ_{i≥1} C(#S-2i, 2)`, pairs taken over the multiset of
    /// all entries.
    pub fn a_value(&self) -> i64 {
        let mut all: Vec<i64> = self.x.iter().chain(&self.y).map(|&v| v as i64).collect();
        all.sort_unstable();
        let n = all.len() as i64;
        let pair_mins: i64 = all
            .iter()
            .enumerate()
            .map(|(j, &e)| e * (n - 1 - j as i64))
            .sum();
        let correction: i64 = (1..).map(|i| n - 2 * i).take_while(|&m| m >= 2).map(choose2).sum();
        pair_mins - correction
    }

    /// `b'(S) = ⌊(#S-1)/2⌋ - #(X ∩ Y)`
    pub fn b_prime(&self) -> i64 {
        let common = self
            .x
            .iter()
            .filter(|v| self.y.binary_search(v).is_ok())
            .count() as i64;
        (self.len() as i64 - 1) / 2 - common
    }

    /// Degree of the unipotent representation as a polynomial in `q`, by the hook formula.
    pub fn degree(&self) -> Result<RatPoly> {
        let theta = self.rank() as usize;
        let a = self.a_value();
        let b = self.b_prime();
        if a < 0 {
            return Err(Error::Internal(format!("negative a-value for {self}")));
        }
        let mut num: RatPoly = (1..=theta).map(|i| RatPoly::q_pow_plus(2 * i, -1)).product();
        num = &num * &RatPoly::q_pow(a as usize);
        let mut den: RatPoly = self
            .hooks()
            .iter()
            .map(|h| RatPoly::q_pow_plus(h.length as usize, -1))
            .chain(
                self.cohooks()
                    .iter()
                    .map(|c| RatPoly::q_pow_plus(c.length as usize, 1)),
            )
            .product();
        let two_pow = BigRational::from_integer(BigInt::from(2).pow(b.unsigned_abs() as u32));
        if b >= 0 {
            den = den.scale(&two_pow);
        } else {
            num = num.scale(&two_pow);
        }
        RatFunc::new(num, den)?
            .to_poly()
            .map_err(|e| Error::Internal(format!("hook formula for {self} is not polynomial: {e}")))
    }

    pub fn core_and_cuspidal(&self) -> CoreInfo {
        let delta = (self.defect() - 1) / 2;
        let core = Symbol::cuspidal(delta);
        CoreInfo {
            is_cuspidal: *self == core,
            support: CuspidalSupport {
                delta,
                a: self.rank() - delta * (delta + 1),
            },
            core,
        }
    }

    pub fn is_cuspidal(&self) -> bool {
        self.core_and_cuspidal().is_cuspidal
    }

    /// Removes `hook`, replacing `z` by `z - length` in its row, and reduces.
    pub fn remove_hook(&self, hook: &Hook) -> Result<Symbol> {
        if !self.hooks().contains(hook) {
            return Err(Error::NotAHook(format!("{hook:?} in {self}")));
        }
        let (mut x, mut y) = (self.x.clone(), self.y.clone());
        let row = match hook.row {
            Row::First => &mut x,
            Row::Second => &mut y,
        };
        let pos = row.iter().position(|&v| v == hook.z).expect("hook entry present");
        row[pos] = hook.z - hook.length;
        row.sort_unstable();
        reduce(x, y)
    }

    /// Two-line matrix rendering for human output.
    pub fn render_matrix(&self) -> String {
        let cells = |row: &[u32]| row.iter().map(u32::to_string).collect::<Vec<_>>();
        let top = cells(&self.x);
        let bottom = cells(&self.y);
        let width = top.iter().chain(&bottom).map(String::len).max().unwrap_or(1);
        let line = |cells: &[String]| {
            cells
                .iter()
                .map(|c| format!("{c:>width$}"))
                .collect::<Vec<_>>()
                .join(" ")
        };
        format!("( {} )\n( {} )", line(&top), {
            let b = line(&bottom);
            let pad = line(&top).len();
            format!("{b:<pad$}")
        })
    }
}

fn rank_of_rows(x: &[u32], y: &[u32]) -> i64 {
    let sum: i64 = x.iter().chain(y).map(|&v| v as i64).sum();
    let n = (x.len() + y.len()) as i64;
    sum - floor_div4((n - 1) * (n - 1))
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |row: &[u32]| {
            if row.is_empty() {
                "—".to_string()
            } else {
                row.iter().map(u32::to_string).collect::<Vec<_>>().join(" ")
            }
        };
        write!(f, "({};{})", join(&self.x), join(&self.y))
    }
}

impl FromStr for Symbol {
    type Err = Error;

    /// Parses the compact form `(0 1 2;1 2)`; an empty row may be written `—`, `-` or nothing.
    fn from_str(s: &str) -> Result<Symbol> {
        let inner = s.trim().trim_start_matches('(').trim_end_matches(')');
        let (a, b) = inner
            .split_once(';')
            .ok_or_else(|| Error::InvalidSymbol(format!("missing ';' in {s:?}")))?;
        let parse_row = |r: &str| -> Result<Vec<i64>> {
            r.split_whitespace()
                .filter(|t| *t != "—" && *t != "-")
                .map(|t| {
                    t.parse::<i64>()
                        .map_err(|_| Error::InvalidSymbol(format!("bad entry {t:?} in {s:?}")))
                })
                .collect()
        };
        reduce_signed(&parse_row(a)?, &parse_row(b)?)
    }
}

impl<'de> Deserialize<'de> for Symbol {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(deny_unknown_fields)]
        struct Raw {
            #[serde(rename = "X")]
            x: Vec<i64>,
            #[serde(rename = "Y")]
            y: Vec<i64>,
        }
        let raw = Raw::deserialize(d)?;
        reduce_signed(&raw.x, &raw.y).map_err(serde::de::Error::custom)
    }
}

/// All strictly increasing sequences of `len` non-negative integers summing to `sum`.
fn distinct_sequences(len: usize, sum: i64) -> Vec<Vec<u32>> {
    fn go(len: usize, sum: i64, min: i64, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if len == 0 {
            if sum == 0 {
                out.push(prefix.clone());
            }
            return;
        }
        let l = len as i64;
        // smallest completion: min, min+1, ..., min+l-1
        let mut v = min;
        while l * v + l * (l - 1) / 2 <= sum {
            prefix.push(v as u32);
            go(len - 1, sum - v, v + 1, prefix, out);
            prefix.pop();
            v += 1;
        }
    }
    let mut out = Vec::new();
    go(len, sum, 0, &mut Vec::new(), &mut out);
    out
}

/// All reduced symbols of rank `theta` and odd positive defect, sorted.
pub fn enumerate_symbols(theta: u32) -> Vec<Symbol> {
    let theta = theta as i64;
    let mut out = BTreeSet::new();
    let mut d: i64 = 1;
    while (d * d) / 4 <= theta {
        let delta = (d - 1) / 2;
        // a reduced symbol with rows of length (r+d, r) has rank at least r + δ(δ+1)
        let mut r: i64 = 0;
        while r + delta * (delta + 1) <= theta {
            let n = 2 * r + d;
            let target = theta + floor_div4((n - 1) * (n - 1));
            let (lx, ly) = ((r + d) as usize, r as usize);
            let min_y = ly as i64 * (ly as i64 - 1) / 2;
            let min_x = lx as i64 * (lx as i64 - 1) / 2;
            for sy in min_y..=(target - min_x) {
                let ys = distinct_sequences(ly, sy);
                if ys.is_empty() {
                    continue;
                }
                let xs = distinct_sequences(lx, target - sy);
                for x in &xs {
                    for y in &ys {
                        let both_zero = x.first() == Some(&0) && y.first() == Some(&0);
                        if !both_zero {
                            out.insert(Symbol {
                                x: x.clone(),
                                y: y.clone(),
                            });
                        }
                    }
                }
            }
            r += 1;
        }
        d += 2;
    }
    out.into_iter().collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn s(text: &str) -> Symbol {
        text.parse().unwrap()
    }

    fn q_poly(c: &[i64]) -> RatPoly {
        RatPoly::from_ints(c)
    }

    #[test]
    fn reduce_examples() {
        assert_eq!(reduce(vec![0, 1, 3], vec![0, 2]).unwrap(), s("(0 2;1)"));
        assert_eq!(reduce(vec![2], vec![]).unwrap().first(), &[2]);
        let r = reduce(vec![0, 1, 2], vec![0, 1]).unwrap();
        assert_eq!(r, s("(0;—)"));
        assert_eq!(r.rank(), 0);
        assert_eq!(rank_of_rows(&[0, 1, 2], &[0, 1]), 0);
    }

    #[test]
    fn reduce_rejects_malformed_rows() {
        assert!(reduce(vec![1, 0], vec![]).is_err());
        assert!(reduce(vec![0, 0, 1], vec![]).is_err());
        assert!(reduce(vec![0, 1], vec![2]).is_ok());
        assert!(reduce(vec![0, 1], vec![]).is_err(), "even defect");
        assert!(reduce(vec![1], vec![0, 2]).is_err(), "negative defect");
        assert!(reduce_signed(&[-1, 2], &[0]).is_err());
    }

    #[test]
    fn rank_defect_examples() {
        assert_eq!(s("(0 1 2;—)").rank_defect(), (2, 3));
        assert_eq!(Symbol::trivial(7).rank_defect(), (7, 1));
        for delta in 0..4 {
            assert_eq!(
                Symbol::cuspidal(delta).rank_defect(),
                (delta * (delta + 1), 2 * delta + 1)
            );
        }
    }

    #[test]
    fn enumerate_small_ranks() {
        assert_eq!(enumerate_symbols(0), vec![s("(0;—)")]);
        assert_eq!(enumerate_symbols(1), vec![s("(0 1;1)"), s("(1;—)")]);
        let y2: BTreeSet<_> = enumerate_symbols(2).into_iter().collect();
        let expected: BTreeSet<_> = ["(2;—)", "(0 1;2)", "(0 2;1)", "(1 2;0)", "(0 1 2;1 2)", "(0 1 2;—)"]
            .iter()
            .map(|t| s(t))
            .collect();
        assert_eq!(y2, expected);
    }

    /// Independent oracle: all pairs of subsets of `{0..=bound}`.
    fn brute_symbols(theta: u32, bound: u32) -> BTreeSet<Symbol> {
        let subsets: Vec<Vec<u32>> = (0u32..1 << (bound + 1))
            .map(|mask| (0..=bound).filter(|b| mask >> b & 1 == 1).collect())
            .collect();
        let mut out = BTreeSet::new();
        for x in &subsets {
            for y in &subsets {
                if x.len() <= y.len() || (x.len() - y.len()) % 2 == 0 {
                    continue;
                }
                if x.first() == Some(&0) && y.first() == Some(&0) {
                    continue;
                }
                if rank_of_rows(x, y) == theta as i64 {
                    out.insert(Symbol {
                        x: x.clone(),
                        y: y.clone(),
                    });
                }
            }
        }
        out
    }

    #[test]
    fn enumerate_matches_brute_force() {
        for theta in 0..=3 {
            let fast: BTreeSet<_> = enumerate_symbols(theta).into_iter().collect();
            assert_eq!(fast, brute_symbols(theta, 2 * theta + 3), "rank {theta}");
        }
    }

    #[test]
    fn hooks_of_trivial_symbol() {
        for theta in 1..6 {
            let (h, c) = Symbol::trivial(theta).hooks_and_cohooks();
            let mut hl: Vec<_> = h.iter().map(|h| h.length).collect();
            let mut cl: Vec<_> = c.iter().map(|c| c.length).collect();
            hl.sort();
            cl.sort();
            assert_eq!(hl, (1..=theta).collect::<Vec<_>>());
            assert_eq!(cl, (1..=theta).collect::<Vec<_>>());
        }
    }

    #[test]
    fn hooks_of_cuspidal_rank_two() {
        let (h, c) = s("(0 1 2;—)").hooks_and_cohooks();
        assert!(h.is_empty());
        let mut cl: Vec<_> = c.iter().map(|c| c.length).collect();
        cl.sort();
        assert_eq!(cl, vec![1, 1, 2]);
    }

    #[test]
    fn hooks_of_s10() {
        let (h, c) = s("(0 1;1)").hooks_and_cohooks();
        assert_eq!(
            h,
            vec![Hook {
                row: Row::Second,
                z: 1,
                length: 1,
                leg_length: 0
            }]
        );
        assert_eq!(c.len(), 1);
        assert_eq!(c[0].length, 1);
    }

    #[test]
    fn degree_examples() {
        for theta in 0..6 {
            assert!(Symbol::trivial(theta).degree().unwrap().is_one());
            assert_eq!(
                Symbol::steinberg(theta).degree().unwrap(),
                RatPoly::q_pow((theta * theta) as usize)
            );
        }
        assert_eq!(s("(0 1;1)").degree().unwrap(), RatPoly::q_pow(1));
        let half = BigRational::new(1.into(), 2.into());
        let expected = (&q_poly(&[0, 1]) * &q_poly(&[-1, 1]).pow(2)).scale(&half);
        assert_eq!(s("(0 1 2;—)").degree().unwrap(), expected);
        assert_eq!(s("(0 1 2;—)").a_value(), 1);
        assert_eq!(s("(0 1 2;—)").b_prime(), 1);
    }

    #[test]
    fn steinberg_evaluations() {
        for theta in 1..5u32 {
            let d = Symbol::steinberg(theta).degree().unwrap();
            for q0 in [2i64, 3] {
                assert_eq!(
                    d.eval_integer(q0).unwrap(),
                    BigInt::from(q0).pow(theta * theta)
                );
            }
        }
    }

    #[test]
    fn degrees_are_positive_integers() {
        for theta in 0..=6 {
            for sym in enumerate_symbols(theta) {
                let d = sym.degree().unwrap();
                for q0 in [2, 3, 5] {
                    let v = d
                        .eval_integer(q0)
                        .unwrap_or_else(|| panic!("{sym} at {q0} not integral"));
                    assert!(v > BigInt::from(0), "{sym} at {q0}");
                }
            }
        }
    }

    #[test]
    fn core_examples() {
        let info = s("(0 1 2;—)").core_and_cuspidal();
        assert!(info.is_cuspidal);
        assert_eq!(info.support, CuspidalSupport { delta: 1, a: 0 });

        let info = s("(0 3;1)").core_and_cuspidal();
        assert_eq!(info.core, s("(0;—)"));
        assert!(!info.is_cuspidal);
        assert_eq!(info.support, CuspidalSupport { delta: 0, a: 3 });

        for theta in 1..5 {
            let info = Symbol::trivial(theta).core_and_cuspidal();
            assert_eq!(info.core, s("(0;—)"));
            assert!(!info.is_cuspidal);
        }
    }

    #[test]
    fn cuspidal_exactly_at_pronic_ranks() {
        for theta in 0..=12u32 {
            let count = enumerate_symbols(theta).iter().filter(|s| s.is_cuspidal()).count();
            let pronic = (0..4).any(|d: u32| d * (d + 1) == theta);
            assert_eq!(count, usize::from(pronic), "rank {theta}");
        }
    }

    #[test]
    fn remove_hook_examples() {
        let s10 = s("(0 1;1)");
        let h = s10.hooks()[0];
        assert_eq!(s10.remove_hook(&h).unwrap(), s("(0;—)"));

        let triv = Symbol::trivial(5);
        for h in triv.hooks() {
            assert_eq!(triv.remove_hook(&h).unwrap(), Symbol::trivial(5 - h.length));
        }

        let t30 = s("(0 1 2 3;1)");
        let h = Hook {
            row: Row::Second,
            z: 1,
            length: 1,
            leg_length: 0,
        };
        assert_eq!(t30.remove_hook(&h).unwrap(), s("(0 1 2;—)"));

        let bogus = Hook {
            row: Row::First,
            z: 1,
            length: 1,
            leg_length: 0,
        };
        assert!(matches!(t30.remove_hook(&bogus), Err(Error::NotAHook(_))));
    }

    #[test]
    fn json_shape() {
        let sym = s("(0 1 2;1 2)");
        assert_eq!(serde_json::to_string(&sym).unwrap(), r#"{"X":[0,1,2],"Y":[1,2]}"#);
        let back: Symbol = serde_json::from_str(r#"{"X":[0,1,3],"Y":[0,2]}"#).unwrap();
        assert_eq!(back, s("(0 2;1)"));
        assert!(serde_json::from_str::<Symbol>(r#"{"X":[1,0],"Y":[]}"#).is_err());
    }

    fn sorted_lengths<T>(v: &[T], f: impl Fn(&T) -> u32) -> Vec<u32> {
        let mut out: Vec<u32> = v.iter().map(f).collect();
        out.sort_unstable();
        out
    }

    /// Hooks computed directly on an unreduced representative.
    fn raw_hook_lengths(x: &[u32], y: &[u32]) -> (Vec<u32>, Vec<u32>) {
        let mut hooks = Vec::new();
        let mut cohooks = Vec::new();
        for (row, other) in [(x, y), (y, x)] {
            for &z in row {
                for k in 1..=z {
                    if !row.contains(&(z - k)) {
                        hooks.push(k);
                    }
                    if !other.contains(&(z - k)) {
                        cohooks.push(k);
                    }
                }
            }
        }
        hooks.sort_unstable();
        cohooks.sort_unstable();
        (hooks, cohooks)
    }

    /// Hook formula evaluated on an arbitrary (possibly shifted) representative.
    fn raw_degree(x: &[u32], y: &[u32]) -> RatPoly {
        let theta = rank_of_rows(x, y) as usize;
        let mut all: Vec<i64> = x.iter().chain(y).map(|&v| v as i64).collect();
        all.sort_unstable();
        let n = all.len() as i64;
        let mut a: i64 = 0;
        for i in 0..all.len() {
            for j in i + 1..all.len() {
                a += all[i].min(all[j]);
            }
        }
        let mut i = 1;
        while n - 2 * i >= 2 {
            a -= choose2(n - 2 * i);
            i += 1;
        }
        let common = x.iter().filter(|v| y.contains(v)).count() as i64;
        let b = (n - 1) / 2 - common;
        let (hooks, cohooks) = raw_hook_lengths(x, y);
        let num: RatPoly = (1..=theta)
            .map(|i| RatPoly::q_pow_plus(2 * i, -1))
            .product::<RatPoly>()
            * RatPoly::q_pow(a as usize);
        let den: RatPoly = hooks
            .iter()
            .map(|&l| RatPoly::q_pow_plus(l as usize, -1))
            .chain(cohooks.iter().map(|&l| RatPoly::q_pow_plus(l as usize, 1)))
            .product::<RatPoly>()
            .scale(&BigRational::from_integer(BigInt::from(2).pow(b as u32)));
        RatFunc::new(num, den).unwrap().to_poly().unwrap()
    }

    #[test]
    fn degree_is_shift_invariant_on_samples() {
        for theta in 0..=4 {
            for sym in enumerate_symbols(theta) {
                for times in 1..3 {
                    let (x, y) = sym.shifted(times);
                    assert_eq!(raw_degree(&x, &y), sym.degree().unwrap(), "{sym} shifted {times}");
                }
            }
        }
    }

    proptest! {
        #[test]
        fn invariants_survive_shifting(theta in 0u32..6, pick in 0usize..1000, times in 1u32..4) {
            let all = enumerate_symbols(theta);
            let sym = &all[pick % all.len()];
            let (x, y) = sym.shifted(times);
            prop_assert_eq!(rank_of_rows(&x, &y), sym.rank() as i64);
            prop_assert_eq!((x.len() - y.len()) as u32, sym.defect());
            let (h, c) = raw_hook_lengths(&x, &y);
            prop_assert_eq!(h, sorted_lengths(&sym.hooks(), |h| h.length));
            prop_assert_eq!(c, sorted_lengths(&sym.cohooks(), |c| c.length));
            prop_assert_eq!(&reduce(x, y).unwrap(), sym);
        }

        #[test]
        fn removing_a_hook_lowers_rank_by_its_length(theta in 1u32..7, pick in 0usize..1000) {
            let all = enumerate_symbols(theta);
            let sym = &all[pick % all.len()];
            for h in sym.hooks() {
                let smaller = sym.remove_hook(&h).unwrap();
                prop_assert_eq!(smaller.rank(), theta - h.length);
                prop_assert_eq!(smaller.defect(), sym.defect());
            }
        }
    }
}
