//! The stratification spectral sequence of the closed stratum `S_θ`.
//!
//! `E_1^{a,b} = H^{a+b}_c(X_{I_a}(w_a))` is Harish-Chandra induced from the Coxeter variety of
//! `Sp(2a)`. Row `b` only carries the eigenvalues `q^b` and `-q^{b+1}`, so the sequence
//! degenerates at `E_2`; what survives is bounded by matching equal symbols between
//! neighbouring cells of each row. Differentials themselves are never built.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::Serialize;

use crate::coxeter::{coxeter_graded, slot_symbol, Cells, EigenvalueLabel, Sign, Slot};
use crate::error::{Error, Result};
use crate::exactq::RatPoly;
use crate::exec::Exec;
use crate::hc::{induce, SymbolMultiset};
use crate::symbols::{reduce, Symbol};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpectralPage {
    pub theta: u32,
    pub cells: BTreeMap<(u32, u32), Cells>,
}

impl SpectralPage {
    pub fn cell(&self, a: u32, b: u32, label: EigenvalueLabel) -> Option<&SymbolMultiset> {
        self.cells.get(&(a, b)).and_then(|c| c.get(&label))
    }

    /// The chain `a ↦ E_1^{a,b}[label]` along one row, empty cells included.
    fn chain(&self, b: u32, label: EigenvalueLabel) -> Vec<SymbolMultiset> {
        (0..=self.theta)
            .map(|a| self.cell(a, b, label).cloned().unwrap_or_default())
            .collect()
    }

    fn row_labels(&self) -> BTreeMap<u32, BTreeSet<EigenvalueLabel>> {
        let mut out: BTreeMap<u32, BTreeSet<EigenvalueLabel>> = BTreeMap::new();
        for (&(_, b), cells) in &self.cells {
            out.entry(b).or_default().extend(cells.keys().copied());
        }
        out
    }

    /// Checks that row `b` carries only `q^b` and `-q^{b+1}`, which makes labels of distinct
    /// rows disjoint and forces degeneration at `E_2`.
    pub fn check_rows(&self) -> Result<()> {
        for (b, labels) in self.row_labels() {
            for l in labels {
                if l != EigenvalueLabel::plus(b) && l != EigenvalueLabel::minus(b + 1) {
                    return Err(Error::Internal(format!("label {l} on row {b}")));
                }
            }
        }
        Ok(())
    }
}

#[derive(Serialize)]
struct PageCellJson<'a> {
    a: u32,
    b: u32,
    eigenvalue: EigenvalueLabel,
    symbols: &'a SymbolMultiset,
}

impl Serialize for SpectralPage {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Page<'a> {
            theta: u32,
            cells: Vec<PageCellJson<'a>>,
        }
        let cells = self
            .cells
            .iter()
            .flat_map(|(&(a, b), cells)| {
                cells.iter().map(move |(&eigenvalue, symbols)| PageCellJson {
                    a,
                    b,
                    eigenvalue,
                    symbols,
                })
            })
            .collect();
        Page {
            theta: self.theta,
            cells,
        }
        .serialize(s)
    }
}

pub fn e1_page(theta: u32) -> SpectralPage {
    e1_page_with(theta, Exec::default())
}

/// `E_1^{a,b}[λ] = R_{GL(θ-a) × Sp(2a)}^{Sp(2θ)} (1 ⊠ H^{a+b}_c(X^a)[λ])`.
pub fn e1_page_with(theta: u32, exec: Exec) -> SpectralPage {
    let columns = exec.map((0..=theta).collect(), |a| {
        let mut out = Vec::new();
        for (deg, cells) in coxeter_graded(a).by_degree {
            for (label, syms) in cells {
                let mut induced = SymbolMultiset::new();
                for (s, m) in syms.iter() {
                    for (t, n) in induce(s, theta - a).iter() {
                        induced.insert(t.clone(), m * n);
                    }
                }
                out.push(((a, deg - a), label, induced));
            }
        }
        out
    });
    let mut cells: BTreeMap<(u32, u32), Cells> = BTreeMap::new();
    for (pos, label, syms) in columns.into_iter().flatten() {
        cells.entry(pos).or_default().insert(label, syms);
    }
    SpectralPage { theta, cells }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum FamilyTag {
    S1,
    S2,
    SExc1,
    SExc2,
    S1Prime,
    S2Prime,
    T1,
    T2,
    TExc1,
    TExc2,
    T1Prime,
    T2Prime,
}

impl fmt::Display for FamilyTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FamilyTag::S1 => "(S1)",
            FamilyTag::S2 => "(S2)",
            FamilyTag::SExc1 => "(S Exc 1)",
            FamilyTag::SExc2 => "(S Exc 2)",
            FamilyTag::S1Prime => "(S1')",
            FamilyTag::S2Prime => "(S2')",
            FamilyTag::T1 => "(T1)",
            FamilyTag::T2 => "(T2)",
            FamilyTag::TExc1 => "(T Exc 1)",
            FamilyTag::TExc2 => "(T Exc 2)",
            FamilyTag::T1Prime => "(T1')",
            FamilyTag::T2Prime => "(T2')",
        })
    }
}

/// Family members indexed by their `d` parameter (0 for the exceptional ones).
pub type Families = BTreeMap<FamilyTag, Vec<(u32, Symbol)>>;

fn upto(lo: u32, hi_inclusive: i64) -> impl Iterator<Item = u32> {
    (lo as i64..=hi_inclusive).map(|v| v as u32)
}

fn sym(x: impl IntoIterator<Item = u32>, y: impl IntoIterator<Item = u32>) -> Symbol {
    reduce(x.into_iter().collect(), y.into_iter().collect()).expect("family template is valid")
}

/// The explicit families whose union is `R^S_{i,θ'}` or `R^T_{j,θ'}` inside `Sp(2θ)`.
pub fn family_terms(theta: u32, theta_p: u32, slot: Slot) -> Result<Families> {
    if theta_p > theta {
        return Err(Error::OutOfRange(format!("θ' = {theta_p} exceeds θ = {theta}")));
    }
    slot_symbol(theta_p, slot)?;
    let (t, tp) = (theta as i64, theta_p as i64);
    let gap = theta - theta_p;
    let mut out = Families::new();
    let mut put = |tag: FamilyTag, d: u32, s: Symbol| out.entry(tag).or_default().push((d, s));
    match slot {
        Slot::S(i) if i < theta_p => {
            let i = i as i64;
            let head = move |last: i64| upto(0, last);
            for d in 0..=gap {
                let d = d as i64;
                put(
                    FamilyTag::S1,
                    d as u32,
                    sym(
                        head(tp - i - 1).chain([(tp + d) as u32]),
                        upto(1, tp - i - 1).chain([(t - i - d) as u32]),
                    ),
                );
            }
            for d in 1..=(i.min(gap as i64)) {
                put(
                    FamilyTag::S2,
                    d as u32,
                    sym(
                        head(tp - i - 2).chain([(tp - i - 1 + d) as u32, tp as u32]),
                        upto(1, tp - i - 1).chain([(t - i - d) as u32]),
                    ),
                );
            }
            if theta_p != theta {
                put(
                    FamilyTag::SExc1,
                    0,
                    sym(head(tp - i).chain([theta]), upto(1, tp - i + 1)),
                );
            }
            if theta_p + 1 < theta && t <= tp + i + 1 {
                put(
                    FamilyTag::SExc2,
                    0,
                    sym(
                        head(tp - i - 1).chain([(t - i - 1) as u32, theta_p + 1]),
                        upto(1, tp - i + 1),
                    ),
                );
            }
        }
        Slot::S(_) => {
            for d in 0..=gap {
                put(FamilyTag::S1Prime, d, sym([0, theta_p + 1 + d], [gap - d]));
            }
            for d in 1..=theta_p.min(gap) {
                put(FamilyTag::S2Prime, d, sym([d, theta_p + 1], [gap - d]));
            }
        }
        Slot::T(j) if j + 2 < theta_p => {
            let j = j as i64;
            for d in 0..=gap {
                let d = d as i64;
                put(
                    FamilyTag::T1,
                    d as u32,
                    sym(
                        upto(0, tp - j - 1).chain([(tp + d) as u32]),
                        upto(1, tp - j - 3).chain([(t - j - 2 - d) as u32]),
                    ),
                );
            }
            for d in 1..=(j.min(gap as i64)) {
                put(
                    FamilyTag::T2,
                    d as u32,
                    sym(
                        upto(0, tp - j - 2).chain([(tp - j - 1 + d) as u32, theta_p]),
                        upto(1, tp - j - 3).chain([(t - j - 2 - d) as u32]),
                    ),
                );
            }
            if theta_p != theta {
                put(
                    FamilyTag::TExc1,
                    0,
                    sym(upto(0, tp - j).chain([theta]), upto(1, tp - j - 1)),
                );
            }
            if theta_p + 1 < theta && t <= tp + j + 1 {
                put(
                    FamilyTag::TExc2,
                    0,
                    sym(
                        upto(0, tp - j - 1).chain([(t - j - 1) as u32, theta_p + 1]),
                        upto(1, tp - j - 1),
                    ),
                );
            }
        }
        Slot::T(_) => {
            for d in 0..=gap {
                put(FamilyTag::T1Prime, d, sym([0, 1, 2, theta_p + 1 + d], [gap - d]));
            }
            for d in 1..=(theta_p - 2).min(gap) {
                put(FamilyTag::T2Prime, d, sym([0, 1, 2 + d, theta_p + 1], [gap - d]));
            }
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FamilyMismatch {
    pub theta_prime: u32,
    pub slot: Slot,
    /// Produced by induction but in no family.
    pub missing: Vec<Symbol>,
    /// In some family but not produced by induction.
    pub extra: Vec<Symbol>,
    /// Symbols listed more than once across the families.
    pub repeated: Vec<Symbol>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FamilyReport {
    pub theta: u32,
    pub slots_checked: usize,
    pub mismatches: Vec<FamilyMismatch>,
}

impl FamilyReport {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty()
    }
}

pub fn verify_families(theta: u32) -> Result<FamilyReport> {
    verify_families_with(theta, Exec::default())
}

/// Compares the family templates against direct induction for every `θ' ≤ θ` and slot.
pub fn verify_families_with(theta: u32, exec: Exec) -> Result<FamilyReport> {
    let jobs: Vec<(u32, Slot)> = (0..=theta)
        .flat_map(|tp| Slot::all(tp).into_iter().map(move |s| (tp, s)))
        .collect();
    let slots_checked = jobs.len();
    let results = exec.map(jobs, |(tp, slot)| -> Result<Option<FamilyMismatch>> {
        let induced = induce(&slot_symbol(tp, slot)?, theta - tp);
        let mut seen = BTreeSet::new();
        let mut repeated = Vec::new();
        for s in family_terms(theta, tp, slot)?.into_values().flatten().map(|(_, s)| s) {
            if !seen.insert(s.clone()) {
                repeated.push(s);
            }
        }
        let missing: Vec<Symbol> = induced.symbols().filter(|s| !seen.contains(*s)).cloned().collect();
        let extra: Vec<Symbol> = seen.iter().filter(|s| !induced.contains(s)).cloned().collect();
        let bad = !missing.is_empty() || !extra.is_empty() || !repeated.is_empty();
        Ok(bad.then_some(FamilyMismatch {
            theta_prime: tp,
            slot,
            missing,
            extra,
            repeated,
        }))
    });
    let mut mismatches = Vec::new();
    for r in results {
        mismatches.extend(r?);
    }
    Ok(FamilyReport {
        theta,
        slots_checked,
        mismatches,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SurvivalOptions {
    /// `H^0_c(S_θ)` is the trivial representation, so the first differential of row 0 has
    /// image everything else in `E_1^{0,0}`.
    pub h0_sharpening: bool,
    /// The cells `(θ,θ)` and `(θ,θ-2)[-q^{θ-1}]` have no neighbours and survive whole.
    pub corner_exactness: bool,
}

impl Default for SurvivalOptions {
    fn default() -> Self {
        SurvivalOptions {
            h0_sharpening: true,
            corner_exactness: true,
        }
    }
}

impl SurvivalOptions {
    pub fn generic() -> Self {
        SurvivalOptions {
            h0_sharpening: false,
            corner_exactness: false,
        }
    }
}

/// Bounds on one eigenspace `H^k_c(S_θ)_λ = E_2^{a,b}[λ]` with `k = a + b`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CellBound {
    pub degree: u32,
    pub a: u32,
    pub b: u32,
    pub eigenvalue: EigenvalueLabel,
    pub guaranteed: SymbolMultiset,
    pub ambiguous: SymbolMultiset,
    pub exact: bool,
    /// Cells on which no closed-form statement exists (`θ' = i + 1` for `q^i`, except
    /// `θ' = 1`, and `θ' = j + 3` for `-q^{j+1}`); reported as the matcher finds them.
    pub beyond_theorem: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundsReport {
    pub theta: u32,
    pub cells: Vec<CellBound>,
}

impl BoundsReport {
    pub fn cell(&self, degree: u32, label: EigenvalueLabel) -> Option<&CellBound> {
        self.cells
            .iter()
            .find(|c| c.degree == degree && c.eigenvalue == label)
    }

    pub fn degree(&self, degree: u32) -> impl Iterator<Item = &CellBound> {
        self.cells.iter().filter(move |c| c.degree == degree)
    }

    /// Whether `H^k` is pinned down: every contributing cell is exact.
    pub fn degree_exact(&self, degree: u32) -> bool {
        self.degree(degree).all(|c| c.exact)
    }

    pub fn degree_guaranteed(&self, degree: u32) -> SymbolMultiset {
        let mut out = SymbolMultiset::new();
        for c in self.degree(degree) {
            out.extend_from(&c.guaranteed);
        }
        out
    }
}

fn is_beyond_theorem(a: u32, b: u32, label: EigenvalueLabel) -> bool {
    match label.sign {
        Sign::Plus => a == b + 1 && a != 1,
        Sign::Minus => a == b + 3,
    }
}

fn split_by_neighbours(
    cell: &SymbolMultiset,
    left: Option<&SymbolMultiset>,
    right: Option<&SymbolMultiset>,
) -> (SymbolMultiset, SymbolMultiset) {
    let matched = |s: &Symbol| left.is_some_and(|l| l.contains(s)) || right.is_some_and(|r| r.contains(s));
    (cell.filter(|s| !matched(s)), cell.filter(|s| matched(s)))
}

pub fn survival_bounds(theta: u32) -> Result<BoundsReport> {
    survival_bounds_with(&e1_page(theta), SurvivalOptions::default())
}

/// Component matching on each row of the first page, followed by the optional sharpenings.
pub fn survival_bounds_with(page: &SpectralPage, opts: SurvivalOptions) -> Result<BoundsReport> {
    page.check_rows()?;
    let theta = page.theta;
    let mut cells = Vec::new();
    for (b, labels) in page.row_labels() {
        for label in labels {
            let chain = page.chain(b, label);
            let at = |a: i64| -> Option<&SymbolMultiset> {
                usize::try_from(a).ok().and_then(|a| chain.get(a)).filter(|m| !m.is_empty())
            };
            for a in 0..=theta {
                let Some(cell) = at(a as i64) else { continue };
                if !cell.is_multiplicity_free() {
                    return Err(Error::Internal(format!("E_1^{{{a},{b}}}[{label}] has multiplicities")));
                }
                let (mut guaranteed, mut ambiguous) = split_by_neighbours(cell, at(a as i64 - 1), at(a as i64 + 1));
                if opts.h0_sharpening && b == 0 && label == EigenvalueLabel::plus(0) && a <= 1 {
                    let trivial = Symbol::trivial(theta);
                    let m0 = &chain[0];
                    if !m0.contains(&trivial) {
                        return Err(Error::Internal("trivial representation missing from E_1^{0,0}".into()));
                    }
                    let image = m0.filter(|s| *s != trivial);
                    if a == 0 {
                        guaranteed = std::iter::once(trivial).collect();
                        ambiguous = SymbolMultiset::new();
                    } else {
                        if let Some(s) = image.symbols().find(|s| !cell.contains(s)) {
                            return Err(Error::Internal(format!("{s} has nowhere to map in E_1^{{1,0}}")));
                        }
                        let rest = cell.filter(|s| !image.contains(s));
                        (guaranteed, ambiguous) = split_by_neighbours(&rest, None, at(2));
                    }
                }
                let corner = a == theta
                    && (label == EigenvalueLabel::plus(theta) || (theta >= 2 && label == EigenvalueLabel::minus(theta - 1)));
                if opts.corner_exactness && corner {
                    guaranteed = cell.clone();
                    ambiguous = SymbolMultiset::new();
                }
                cells.push(CellBound {
                    degree: a + b,
                    a,
                    b,
                    eigenvalue: label,
                    exact: ambiguous.is_empty(),
                    beyond_theorem: is_beyond_theorem(a, b, label),
                    guaranteed,
                    ambiguous,
                });
            }
        }
    }
    cells.sort_by_key(|c| (c.degree, c.eigenvalue));
    Ok(BoundsReport { theta, cells })
}

fn total_degree(m: &SymbolMultiset) -> Result<RatPoly> {
    let mut out = RatPoly::zero();
    for (s, k) in m.iter() {
        out = &out + &s.degree()?.scale(&num_rational::BigRational::from_integer(k.into()));
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WeightRow {
    pub degree: u32,
    pub eigenvalue: EigenvalueLabel,
    pub min_dim: RatPoly,
    pub max_dim: RatPoly,
    pub exact: bool,
    pub beyond_theorem: bool,
    /// Some constituent certainly survives with weight `2·exponent ≠ degree`.
    pub non_purity_witness: bool,
}

/// Whether the eigenvalue `label` may occur in `H^k_c(S_θ)` at all.
pub fn in_eigenvalue_window(theta: u32, k: u32, label: EigenvalueLabel) -> bool {
    let lo = k - k.min(theta);
    let hi = k - k.div_ceil(2);
    match label.sign {
        Sign::Plus => label.exponent <= theta && lo <= label.exponent && label.exponent <= hi,
        Sign::Minus => {
            let j = label.exponent - 1;
            j + 2 <= theta && lo <= j && j + 1 <= hi
        }
    }
}

pub fn weight_table(theta: u32) -> Result<Vec<WeightRow>> {
    let report = survival_bounds(theta)?;
    let mut rows = Vec::with_capacity(report.cells.len());
    for c in &report.cells {
        if !in_eigenvalue_window(theta, c.degree, c.eigenvalue) {
            return Err(Error::Internal(format!(
                "eigenvalue {} outside the window in degree {}",
                c.eigenvalue, c.degree
            )));
        }
        let min_dim = total_degree(&c.guaranteed)?;
        let max_dim = &min_dim + &total_degree(&c.ambiguous)?;
        rows.push(WeightRow {
            degree: c.degree,
            eigenvalue: c.eigenvalue,
            exact: c.exact,
            beyond_theorem: c.beyond_theorem,
            non_purity_witness: !c.guaranteed.is_empty() && c.eigenvalue.weight() != c.degree,
            min_dim,
            max_dim,
        });
    }
    Ok(rows)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EulerRow {
    pub b: u32,
    pub eigenvalue: EigenvalueLabel,
    /// `Σ_a (-1)^a dim E_1^{a,b}`.
    pub chi: RatPoly,
    pub lower: RatPoly,
    pub upper: RatPoly,
    pub exact: bool,
    pub ok: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EulerReport {
    pub theta: u32,
    pub rows: Vec<EulerRow>,
}

impl EulerReport {
    pub fn passed(&self) -> bool {
        self.rows.iter().all(|r| r.ok)
    }
}

/// Sample points at which the interval bounds are compared.
pub const EULER_SAMPLE_Q: [i64; 3] = [3, 5, 7];

/// The alternating sum of each row is an invariant of the page; checks it against the
/// interval spanned by the survival bounds, and exactly on rows where every cell is exact.
pub fn euler_check(theta: u32) -> Result<EulerReport> {
    let page = e1_page(theta);
    let report = survival_bounds_with(&page, SurvivalOptions::default())?;
    let mut rows = Vec::new();
    for (b, labels) in page.row_labels() {
        for label in labels {
            let mut chi = RatPoly::zero();
            for (a, m) in page.chain(b, label).iter().enumerate() {
                let d = total_degree(m)?;
                chi = if a % 2 == 0 { &chi + &d } else { &chi - &d };
            }
            let (mut lower, mut upper) = (RatPoly::zero(), RatPoly::zero());
            let mut exact = true;
            for c in report.cells.iter().filter(|c| c.b == b && c.eigenvalue == label) {
                let g = total_degree(&c.guaranteed)?;
                let full = &g + &total_degree(&c.ambiguous)?;
                exact &= c.exact;
                if c.a % 2 == 0 {
                    lower = &lower + &g;
                    upper = &upper + &full;
                } else {
                    lower = &lower - &full;
                    upper = &upper - &g;
                }
            }
            let ok = if exact {
                lower == chi
            } else {
                EULER_SAMPLE_Q.iter().all(|&q0| {
                    let (lo, x, hi) = (lower.eval_int(q0), chi.eval_int(q0), upper.eval_int(q0));
                    lo <= x && x <= hi
                })
            };
            rows.push(EulerRow {
                b,
                eigenvalue: label,
                chi,
                lower,
                upper,
                exact,
                ok,
            });
        }
    }
    Ok(EulerReport { theta, rows })
}
