//! Cohomology of the Coxeter variety `X^k` of `Sp(2k)`: the symbols `S^k_i`, `T^k_j`, their
//! Frobenius eigenvalue labels, Lusztig's degree formulas and the restriction recursion
//! `*R(H^{k+i}(X^k)) = H^{k-1+i}(X^{k-1}) ⊕ H^{k-2+i}(X^{k-1})(1)`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::exactq::{RatFunc, RatPoly};
use crate::hc::{restrict, SymbolMultiset};
use crate::symbols::{reduce, Symbol};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

/// The Frobenius eigenvalue `sign · q^exponent`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EigenvalueLabel {
    pub sign: Sign,
    pub exponent: u32,
}

impl EigenvalueLabel {
    pub fn plus(exponent: u32) -> Self {
        EigenvalueLabel {
            sign: Sign::Plus,
            exponent,
        }
    }

    /// `-q^exponent`; exponent 0 is not a label that occurs.
    pub fn minus(exponent: u32) -> Self {
        assert!(exponent >= 1, "-1 is never a Frobenius eigenvalue here");
        EigenvalueLabel {
            sign: Sign::Minus,
            exponent,
        }
    }

    /// Tate twist `(n)`: multiplies the eigenvalue by `q^n`.
    pub fn twist(self, n: u32) -> Self {
        EigenvalueLabel {
            exponent: self.exponent + n,
            ..self
        }
    }

    /// Absolute weight is `2 · exponent`; a class in degree `k` is pure iff this equals `k`.
    pub fn weight(self) -> u32 {
        2 * self.exponent
    }
}

impl fmt::Display for EigenvalueLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self.sign {
            Sign::Plus => '+',
            Sign::Minus => '-',
        };
        match self.exponent {
            0 => write!(f, "{s}1"),
            1 => write!(f, "{s}q"),
            e => write!(f, "{s}q^{e}"),
        }
    }
}

impl FromStr for EigenvalueLabel {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let bad = || Error::OutOfRange(format!("bad eigenvalue label {text:?}"));
        let (sign, rest) = match text.as_bytes().first() {
            Some(b'+') => (Sign::Plus, &text[1..]),
            Some(b'-') => (Sign::Minus, &text[1..]),
            _ => return Err(bad()),
        };
        let exponent = match rest {
            "1" => 0,
            "q" => 1,
            _ => rest
                .strip_prefix("q^")
                .and_then(|e| e.parse().ok())
                .ok_or_else(bad)?,
        };
        if sign == Sign::Minus && exponent == 0 {
            return Err(bad());
        }
        Ok(EigenvalueLabel { sign, exponent })
    }
}

impl Serialize for EigenvalueLabel {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for EigenvalueLabel {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Eigenvalue-labelled pieces of one cohomology group.
pub type Cells = BTreeMap<EigenvalueLabel, SymbolMultiset>;

/// Cohomology graded by degree, each degree split into Frobenius eigenspaces.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GradedRep {
    pub by_degree: BTreeMap<u32, Cells>,
}

impl GradedRep {
    pub fn cells(&self, degree: u32) -> Option<&Cells> {
        self.by_degree.get(&degree)
    }

    pub fn cell(&self, degree: u32, label: EigenvalueLabel) -> Option<&SymbolMultiset> {
        self.by_degree.get(&degree).and_then(|c| c.get(&label))
    }

    pub fn insert(&mut self, degree: u32, label: EigenvalueLabel, symbols: SymbolMultiset) {
        if symbols.is_empty() {
            return;
        }
        self.by_degree
            .entry(degree)
            .or_default()
            .entry(label)
            .or_default()
            .extend_from(&symbols);
    }

    pub fn all_symbols(&self) -> impl Iterator<Item = (&Symbol, u32)> {
        self.by_degree
            .values()
            .flat_map(|c| c.values())
            .flat_map(|m| m.iter())
    }
}

#[derive(Serialize, Deserialize)]
struct CellJson {
    eigenvalue: EigenvalueLabel,
    symbols: SymbolMultiset,
}

#[derive(Serialize, Deserialize)]
struct DegreeJson {
    degree: u32,
    cells: Vec<CellJson>,
}

impl Serialize for GradedRep {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let v: Vec<DegreeJson> = self
            .by_degree
            .iter()
            .map(|(&degree, cells)| DegreeJson {
                degree,
                cells: cells
                    .iter()
                    .map(|(&eigenvalue, symbols)| CellJson {
                        eigenvalue,
                        symbols: symbols.clone(),
                    })
                    .collect(),
            })
            .collect();
        v.serialize(s)
    }
}

impl<'de> Deserialize<'de> for GradedRep {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v: Vec<DegreeJson> = Vec::deserialize(d)?;
        let mut out = GradedRep::default();
        for deg in v {
            for cell in deg.cells {
                out.insert(deg.degree, cell.eigenvalue, cell.symbols);
            }
        }
        Ok(out)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Slot {
    S(u32),
    T(u32),
}

impl Slot {
    /// Eigenvalue on the eigenspace this slot names: `q^i` for `S(i)`, `-q^{j+1}` for `T(j)`.
    pub fn label(self) -> EigenvalueLabel {
        match self {
            Slot::S(i) => EigenvalueLabel::plus(i),
            Slot::T(j) => EigenvalueLabel::minus(j + 1),
        }
    }

    /// Cohomological degree of the slot in `X^k`.
    pub fn degree(self, k: u32) -> u32 {
        match self {
            Slot::S(i) | Slot::T(i) => k + i,
        }
    }

    pub fn all(k: u32) -> Vec<Slot> {
        (0..=k)
            .map(Slot::S)
            .chain((0..k.saturating_sub(1)).map(Slot::T))
            .collect()
    }

    fn check(self, k: u32) -> Result<()> {
        let ok = match self {
            Slot::S(i) => i <= k,
            Slot::T(j) => j + 2 <= k,
        };
        if ok {
            Ok(())
        } else {
            Err(Error::OutOfRange(format!("{self} is not a slot of X^{k}")))
        }
    }
}

impl fmt::Display for Slot {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Slot::S(i) => write!(f, "S({i})"),
            Slot::T(j) => write!(f, "T({j})"),
        }
    }
}

impl FromStr for Slot {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let bad = || Error::OutOfRange(format!("bad slot {text:?}, expected S(i) or T(j)"));
        let inner = |t: &str| -> Result<u32> {
            t.strip_prefix('(')
                .and_then(|t| t.strip_suffix(')'))
                .and_then(|t| t.trim().parse().ok())
                .ok_or_else(bad)
        };
        if let Some(rest) = text.strip_prefix('S') {
            Ok(Slot::S(inner(rest)?))
        } else if let Some(rest) = text.strip_prefix('T') {
            Ok(Slot::T(inner(rest)?))
        } else {
            Err(bad())
        }
    }
}

/// `S^k_i = (0 … k-i-1, k ; 1 … k-i)`.
pub fn s_symbol(k: u32, i: u32) -> Symbol {
    let mut x: Vec<u32> = (0..k - i).collect();
    x.push(k);
    reduce(x, (1..=k - i).collect()).expect("S^k_i is a valid symbol")
}

/// `T^k_j = (0 … k-j-1, k ; 1 … k-j-2)`.
pub fn t_symbol(k: u32, j: u32) -> Symbol {
    let mut x: Vec<u32> = (0..k - j).collect();
    x.push(k);
    reduce(x, (1..k - j - 1).collect()).expect("T^k_j is a valid symbol")
}

pub fn slot_symbol(k: u32, slot: Slot) -> Result<Symbol> {
    slot.check(k)?;
    Ok(match slot {
        Slot::S(i) => s_symbol(k, i),
        Slot::T(j) => t_symbol(k, j),
    })
}

/// `(S^k_0, …, S^k_k)` and `(T^k_0, …, T^k_{k-2})`.
pub fn coxeter_symbols(k: u32) -> (Vec<Symbol>, Vec<Symbol>) {
    let s = (0..=k).map(|i| s_symbol(k, i)).collect();
    let t = (0..k.saturating_sub(1)).map(|j| t_symbol(k, j)).collect();
    (s, t)
}

fn frac(num: RatPoly, den: RatPoly) -> RatFunc {
    RatFunc::new(num, den).expect("non-zero denominator")
}

/// `Π_s (q^{s+shift} + sign) / (q^s + sign)`.
fn product_ratio(range: impl IntoIterator<Item = u32>, shift: u32, sign: i64) -> RatFunc {
    let mut out = RatFunc::from_poly(RatPoly::one());
    for s in range {
        let f = frac(
            RatPoly::q_pow_plus((s + shift) as usize, sign),
            RatPoly::q_pow_plus(s as usize, sign),
        );
        out = out.mul(&f).expect("product of fractions");
    }
    out
}

/// Dimension of the eigenspace of `X^k` named by `slot`, from Lusztig's product formulas.
pub fn lusztig_degree(k: u32, slot: Slot) -> Result<RatPoly> {
    slot.check(k)?;
    let f = match slot {
        Slot::S(i) => {
            let m = k - i;
            RatFunc::from_poly(RatPoly::q_pow((m * m) as usize))
                .mul(&product_ratio(1..=m, i, -1))?
                .mul(&product_ratio(0..m, i, 1))?
        }
        Slot::T(j) => {
            let m = k - j - 1;
            let half = BigRational::new(BigInt::from(1), BigInt::from(2));
            let lead = frac(
                &(&RatPoly::q_pow((m * m) as usize)
                    * &RatPoly::q_pow_plus((k - 1) as usize, -1))
                    * &RatPoly::q_pow_plus(k as usize, -1).scale(&half),
                RatPoly::q_pow_plus(1, 1),
            );
            lead.mul(&product_ratio(1..m, j, -1))?
                .mul(&product_ratio(2..=m, j, 1))?
        }
    };
    f.to_poly()
}

/// `H^•_c(X^k)` with eigenvalue labels: `H^{k+i} = S^k_i[q^i] ⊕ T^k_i[-q^{i+1}]`.
pub fn coxeter_graded(k: u32) -> GradedRep {
    let mut out = GradedRep::default();
    for slot in Slot::all(k) {
        let sym = slot_symbol(k, slot).expect("slot in range");
        out.insert(slot.degree(k), slot.label(), std::iter::once(sym).collect());
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RecursionMismatch {
    pub i: u32,
    pub eigenvalue: EigenvalueLabel,
    pub restricted: SymbolMultiset,
    pub expected: SymbolMultiset,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RecursionReport {
    pub k: u32,
    pub cells_checked: usize,
    pub mismatches: Vec<RecursionMismatch>,
}

impl RecursionReport {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty()
    }
}

/// Restricts every eigenspace of `H^{k+i}(X^k)` to `Sp(2(k-1))` and compares with
/// `H^{k-1+i}(X^{k-1}) ⊕ H^{k-2+i}(X^{k-1})(1)`, label by label.
pub fn verify_restriction_recursion(k: u32) -> Result<RecursionReport> {
    if k == 0 {
        return Err(Error::OutOfRange("the recursion needs k ≥ 1".into()));
    }
    let top = coxeter_graded(k);
    let below = coxeter_graded(k - 1);
    let mut report = RecursionReport {
        k,
        cells_checked: 0,
        mismatches: Vec::new(),
    };
    for i in 0..=k {
        let mut lhs: Cells = BTreeMap::new();
        for (&label, syms) in top.cells(k + i).into_iter().flatten() {
            let entry = lhs.entry(label).or_default();
            for (s, m) in syms.iter() {
                for (r, rm) in restrict(s, 1)?.iter() {
                    entry.insert(r.clone(), m * rm);
                }
            }
        }
        let mut rhs: Cells = BTreeMap::new();
        for (&label, syms) in below.cells(k + i - 1).into_iter().flatten() {
            rhs.entry(label).or_default().extend_from(syms);
        }
        if i >= 1 {
            for (&label, syms) in below.cells(k + i - 2).into_iter().flatten() {
                rhs.entry(label.twist(1)).or_default().extend_from(syms);
            }
        }
        let labels: BTreeSet<EigenvalueLabel> = lhs.keys().chain(rhs.keys()).copied().collect();
        for label in labels {
            report.cells_checked += 1;
            let l = lhs.remove(&label).unwrap_or_default();
            let r = rhs.remove(&label).unwrap_or_default();
            if l != r {
                report.mismatches.push(RecursionMismatch {
                    i,
                    eigenvalue: label,
                    restricted: l,
                    expected: r,
                });
            }
        }
    }
    Ok(report)
}
