//! Isotropic subspace counts over `F_p`, incidences between Bruhat-Tits strata, and the
//! bookkeeping for the cases with `θ_max = 1`.

use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::exec::Exec;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Kind {
    Symplectic,
    OrthogonalOdd,
    OrthogonalEvenSplit,
    OrthogonalEvenNonsplit,
}

impl Kind {
    pub const ALL: [Kind; 4] = [
        Kind::Symplectic,
        Kind::OrthogonalOdd,
        Kind::OrthogonalEvenSplit,
        Kind::OrthogonalEvenNonsplit,
    ];

    pub fn is_symmetric(self) -> bool {
        self != Kind::Symplectic
    }

    fn name(self) -> &'static str {
        match self {
            Kind::Symplectic => "symplectic",
            Kind::OrthogonalOdd => "orthogonal-odd",
            Kind::OrthogonalEvenSplit => "orthogonal-even-split",
            Kind::OrthogonalEvenNonsplit => "orthogonal-even-nonsplit",
        }
    }
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Kind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Kind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| Error::InvalidFormSpace(format!("unknown kind {s:?}")))
    }
}

/// A non-degenerate symplectic or symmetric space over `F_p`, up to isometry.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct FormSpace {
    pub kind: Kind,
    pub d: u32,
    /// Witt index.
    pub delta: u32,
}

impl FormSpace {
    pub fn new(kind: Kind, d: u32) -> Result<Self> {
        let delta = match kind {
            Kind::Symplectic | Kind::OrthogonalEvenSplit if d % 2 == 0 => d / 2,
            Kind::OrthogonalEvenNonsplit if d % 2 == 0 && d >= 2 => d / 2 - 1,
            Kind::OrthogonalOdd if d % 2 == 1 => d / 2,
            _ => {
                return Err(Error::InvalidFormSpace(format!(
                    "no {kind} space of dimension {d}"
                )))
            }
        };
        Ok(FormSpace { kind, d, delta })
    }
}

fn check_odd_prime(p: u64) -> Result<()> {
    let prime = p >= 3 && p % 2 == 1 && (3..).step_by(2).take_while(|k| k * k <= p).all(|k| p % k != 0);
    if prime {
        Ok(())
    } else {
        Err(Error::OutOfRange(format!("p = {p} is not an odd prime")))
    }
}

fn pow(p: u64, e: u32) -> BigRational {
    BigRational::from_integer(BigInt::from(p).pow(e))
}

/// `#N(r, V)`, the number of `r`-dimensional totally isotropic subspaces.
pub fn count_isotropic(space: FormSpace, r: u32, p: u64) -> Result<BigUint> {
    check_odd_prime(p)?;
    let delta = space.delta;
    if r > delta {
        return Err(Error::ExceedsWittIndex { r, witt_index: delta });
    }
    let one = BigRational::one();
    let mut n = one.clone();
    for i in 1..=r {
        n *= (pow(p, 2 * (i + delta - r)) - &one) / (pow(p, i) - &one);
    }
    match space.kind {
        Kind::OrthogonalEvenNonsplit => {
            n *= (pow(p, delta + 1) + &one) / (pow(p, delta + 1 - r) + &one);
        }
        Kind::OrthogonalEvenSplit => {
            n *= (pow(p, delta - r) + &one) / (pow(p, delta) + &one);
        }
        _ => {}
    }
    if !n.is_integer() || n.is_negative() {
        return Err(Error::Internal(format!("#N({r}, {space:?}) = {n} at p = {p}")));
    }
    Ok(n.to_integer().to_biguint().expect("non-negative"))
}

/// A Gram matrix over `F_p`, entries reduced to `0..p`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GramMatrix {
    pub p: u64,
    pub entries: Vec<Vec<u64>>,
    pub symmetric: bool,
}

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1;
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

/// Smallest quadratic non-residue mod `p`.
pub fn non_square(p: u64) -> u64 {
    (2..p).find(|&e| pow_mod(e, (p - 1) / 2, p) == p - 1).expect("odd prime has a non-square")
}

impl GramMatrix {
    pub fn new(p: u64, entries: Vec<Vec<u64>>, symmetric: bool) -> Result<Self> {
        check_odd_prime(p)?;
        let d = entries.len();
        if entries.iter().any(|row| row.len() != d) {
            return Err(Error::InvalidFormSpace("Gram matrix is not square".into()));
        }
        let g = GramMatrix {
            p,
            entries: entries
                .into_iter()
                .map(|row| row.into_iter().map(|v| v % p).collect())
                .collect(),
            symmetric,
        };
        for i in 0..d {
            for j in 0..d {
                let (a, b) = (g.entries[i][j], g.entries[j][i]);
                let ok = if symmetric { a == b } else { (a + b) % p == 0 && (i != j || a == 0) };
                if !ok {
                    return Err(Error::InvalidFormSpace(format!(
                        "Gram matrix is not {} at ({i},{j})",
                        if symmetric { "symmetric" } else { "alternating" }
                    )));
                }
            }
        }
        if g.rank() != d {
            return Err(Error::InvalidFormSpace("Gram matrix is degenerate".into()));
        }
        Ok(g)
    }

    /// Antidiagonal forms (`±1` for symplectic), with an anisotropic `diag(1, -ε)` block in
    /// the middle for the non-split even case.
    pub fn standard(space: FormSpace, p: u64) -> Result<Self> {
        let d = space.d as usize;
        let mut m = vec![vec![0u64; d]; d];
        match space.kind {
            Kind::Symplectic => {
                for i in 0..d {
                    m[i][d - 1 - i] = if i < d / 2 { 1 } else { p - 1 };
                }
            }
            Kind::OrthogonalOdd | Kind::OrthogonalEvenSplit => {
                for i in 0..d {
                    m[i][d - 1 - i] = 1;
                }
            }
            Kind::OrthogonalEvenNonsplit => {
                let delta = space.delta as usize;
                for i in 0..delta {
                    m[i][d - 1 - i] = 1;
                    m[d - 1 - i][i] = 1;
                }
                m[delta][delta] = 1;
                m[delta + 1][delta + 1] = p - non_square(p);
            }
        }
        GramMatrix::new(p, m, space.kind.is_symmetric())
    }

    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    fn rank(&self) -> usize {
        let p = self.p;
        let mut m = self.entries.clone();
        let d = m.len();
        let mut rank = 0;
        for col in 0..d {
            let Some(piv) = (rank..d).find(|&r| m[r][col] != 0) else { continue };
            m.swap(rank, piv);
            let inv = pow_mod(m[rank][col], p - 2, p);
            for r in 0..d {
                if r != rank && m[r][col] != 0 {
                    let f = m[r][col] * inv % p;
                    for c in 0..d {
                        m[r][c] = (m[r][c] + p * p - f * m[rank][c] % p) % p;
                    }
                }
            }
            rank += 1;
        }
        rank
    }

    fn form(&self, u: &[u64], v: &[u64]) -> u64 {
        let p = self.p;
        let mut acc = 0;
        for (i, &ui) in u.iter().enumerate() {
            if ui == 0 {
                continue;
            }
            for (j, &vj) in v.iter().enumerate() {
                acc = (acc + ui * self.entries[i][j] % p * vj) % p;
            }
        }
        acc
    }
}

/// Limits above which [`brute_force_isotropic`] refuses to run without an override.
pub const BRUTE_MAX_P: u64 = 7;
pub const BRUTE_MAX_D: usize = 6;
pub const BRUTE_MAX_R: u32 = 3;

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// Counts totally isotropic `r`-subspaces by running over reduced row-echelon bases.
pub fn brute_force_isotropic(g: &GramMatrix, r: u32, exec: Exec, override_guard: bool) -> Result<u64> {
    let d = g.dim();
    if !override_guard && (g.p > BRUTE_MAX_P || d > BRUTE_MAX_D || r > BRUTE_MAX_R) {
        return Err(Error::GuardExceeded(format!(
            "brute force limited to p ≤ {BRUTE_MAX_P}, d ≤ {BRUTE_MAX_D}, r ≤ {BRUTE_MAX_R} (got p = {}, d = {d}, r = {r})",
            g.p
        )));
    }
    let r = r as usize;
    if r > d {
        return Ok(0);
    }
    let p = g.p;
    let mut total = 0;
    for pivots in combinations(d, r) {
        // free slots: row i, columns after its pivot that are not pivots themselves
        let free: Vec<(usize, usize)> = (0..r)
            .flat_map(|i| {
                let pivots = &pivots;
                (pivots[i] + 1..d).filter(move |c| !pivots.contains(c)).map(move |c| (i, c))
            })
            .collect();
        let count = p
            .checked_pow(free.len() as u32)
            .ok_or_else(|| Error::GuardExceeded("enumeration too large".into()))?;
        total += exec.sum_range(count, |mut idx| {
            let mut rows = vec![vec![0u64; d]; r];
            for (i, &c) in pivots.iter().enumerate() {
                rows[i][c] = 1;
            }
            for &(i, c) in &free {
                rows[i][c] = idx % p;
                idx /= p;
            }
            for i in 0..r {
                for j in i..r {
                    if (i != j || g.symmetric) && g.form(&rows[i], &rows[j]) != 0 {
                        return 0;
                    }
                }
            }
            1
        });
    }
    Ok(total)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OracleRow {
    pub kind: Kind,
    pub d: u32,
    pub r: u32,
    pub p: u64,
    #[serde(serialize_with = "as_decimal")]
    pub formula: BigUint,
    pub brute_force: u64,
    #[serde(rename = "match")]
    pub matches: bool,
}

/// Formula against brute force for every space of dimension `≤ max_d` and every `r ≤ δ`.
pub fn oracle_table(primes: &[u64], max_d: u32, exec: Exec) -> Result<Vec<OracleRow>> {
    let mut rows = Vec::new();
    for &p in primes {
        for kind in Kind::ALL {
            for d in 0..=max_d {
                let Ok(space) = FormSpace::new(kind, d) else { continue };
                let g = GramMatrix::standard(space, p)?;
                for r in 0..=space.delta {
                    let formula = count_isotropic(space, r, p)?;
                    let brute_force = brute_force_isotropic(&g, r, exec, false)?;
                    rows.push(OracleRow {
                        kind,
                        d,
                        r,
                        p,
                        matches: formula == BigUint::from(brute_force),
                        formula,
                        brute_force,
                    });
                }
            }
        }
    }
    Ok(rows)
}

pub fn as_decimal<S: Serializer>(v: &BigUint, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(v)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SplitCase {
    Odd,
    EvenSplit,
    EvenNonsplit,
}

impl FromStr for SplitCase {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "odd" => Ok(SplitCase::Odd),
            "even-split" | "split" => Ok(SplitCase::EvenSplit),
            "even-nonsplit" | "nonsplit" | "non-split" => Ok(SplitCase::EvenNonsplit),
            _ => Err(Error::InvalidCase(format!("unknown case {s:?}"))),
        }
    }
}

/// The hermitian space of dimension `n` (split or not when `n` is even) at the prime `p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct CaseSpec {
    pub n: u32,
    pub split_case: SplitCase,
    pub p: u64,
}

impl CaseSpec {
    pub fn new(n: u32, split_case: SplitCase, p: u64) -> Result<Self> {
        check_odd_prime(p)?;
        let ok = match split_case {
            SplitCase::Odd => n % 2 == 1,
            SplitCase::EvenSplit => n % 2 == 0 && n >= 2,
            SplitCase::EvenNonsplit => n % 2 == 0 && n >= 2,
        };
        if !ok {
            return Err(Error::InvalidCase(format!("n = {n} does not fit case {split_case:?}")));
        }
        Ok(CaseSpec { n, split_case, p })
    }

    /// Odd `n` forces the odd case; even `n` needs an explicit choice.
    pub fn infer(n: u32, split_case: Option<SplitCase>, p: u64) -> Result<Self> {
        match (split_case, n % 2) {
            (Some(c), _) => CaseSpec::new(n, c, p),
            (None, 1) => CaseSpec::new(n, SplitCase::Odd, p),
            (None, _) => Err(Error::InvalidCase(format!(
                "n = {n} is even: say whether the space is split or non-split"
            ))),
        }
    }

    /// Kind of `V¹_Λ`, the symmetric space attached to a lattice of the given type.
    fn orthogonal_kind(self) -> Kind {
        match self.split_case {
            SplitCase::Odd => Kind::OrthogonalOdd,
            SplitCase::EvenSplit => Kind::OrthogonalEvenSplit,
            SplitCase::EvenNonsplit => Kind::OrthogonalEvenNonsplit,
        }
    }
}

/// Half the maximal type of a vertex lattice.
pub fn theta_max(case: CaseSpec) -> u32 {
    match case.split_case {
        SplitCase::Odd => (case.n - 1) / 2,
        SplitCase::EvenSplit => case.n / 2,
        SplitCase::EvenNonsplit => (case.n - 2) / 2,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    /// Lattices of type `2θ'` inside a fixed one of type `2θ`.
    Below,
    /// Lattices of type `2θ'` containing it.
    Above,
}

impl FromStr for Direction {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "below" => Ok(Direction::Below),
            "above" => Ok(Direction::Above),
            _ => Err(Error::OutOfRange(format!("direction must be below or above, got {s:?}"))),
        }
    }
}

pub fn strata_incidence(case: CaseSpec, theta: u32, theta_p: u32, direction: Direction) -> Result<BigUint> {
    let tmax = theta_max(case);
    if theta > tmax {
        return Err(Error::OutOfRange(format!("θ = {theta} exceeds θ_max = {tmax}")));
    }
    match direction {
        Direction::Below => {
            if theta_p > theta {
                return Err(Error::OutOfRange(format!("below needs θ' ≤ θ, got {theta_p} > {theta}")));
            }
            count_isotropic(FormSpace::new(Kind::Symplectic, 2 * theta)?, theta - theta_p, case.p)
        }
        Direction::Above => {
            if theta_p < theta || theta_p > tmax {
                return Err(Error::OutOfRange(format!(
                    "above needs θ ≤ θ' ≤ θ_max = {tmax}, got θ' = {theta_p}"
                )));
            }
            let space = FormSpace::new(case.orthogonal_kind(), case.n - 2 * theta)?;
            count_isotropic(space, theta_p - theta, case.p)
        }
    }
}

fn require_theta_max_one(case: CaseSpec) -> Result<()> {
    match theta_max(case) {
        1 => Ok(()),
        t => Err(Error::ThetaMaxUnsupported(t)),
    }
}

fn binomial(n: &BigUint, k: u32) -> BigUint {
    let mut acc = BigUint::one();
    for i in 0..k {
        let f = n - BigUint::from(i);
        if f.is_zero() && n < &BigUint::from(k) {
            return BigUint::zero();
        }
        acc = acc * f / BigUint::from(i + 1);
    }
    acc
}

/// `#N(Λ_0)`: lattices of type 2 containing a fixed lattice of type 0.
pub fn neighbours_of_type_zero(case: CaseSpec) -> Result<BigUint> {
    strata_incidence(case, 0, 1, Direction::Above)
}

/// `k_{s,θ}`: how many `s`-element sets of maximal-type lattices intersect in a given
/// lattice of type `2θ`. Only the `θ_max = 1` cases are supported.
pub fn k_mult(case: CaseSpec, s: u32, theta: u32) -> Result<BigUint> {
    require_theta_max_one(case)?;
    if s == 0 {
        return Err(Error::OutOfRange("s must be positive".into()));
    }
    match theta {
        1 => Ok(if s == 1 { BigUint::one() } else { BigUint::zero() }),
        0 if s == 1 => Ok(BigUint::zero()),
        0 => Ok(binomial(&neighbours_of_type_zero(case)?, s)),
        _ => Err(Error::OutOfRange(format!("θ = {theta} exceeds θ_max = 1"))),
    }
}

/// `ν = Σ_{i=2}^{N} (-1)^i C(N, i)` with `N = #N(Λ_0)`.
pub fn nu(case: CaseSpec) -> Result<BigInt> {
    require_theta_max_one(case)?;
    let n = neighbours_of_type_zero(case)?;
    let top = n.to_u32().ok_or_else(|| Error::OutOfRange("N too large".into()))?;
    let mut acc = BigInt::zero();
    for i in 2..=top {
        let c = BigInt::from(binomial(&n, i));
        acc += if i % 2 == 0 { c } else { -c };
    }
    Ok(acc)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RzTerm {
    #[serde(serialize_with = "as_decimal")]
    pub multiplicity: BigUint,
    /// `θ` of the compactly induced `c-Ind_{J_θ}^J 1`.
    pub inducing_theta: u32,
    /// The Frobenius acts by `p^frobenius_exponent`.
    pub frobenius_exponent: u32,
}

impl fmt::Display for RzTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let scalar = match self.frobenius_exponent {
            0 => "1".to_string(),
            1 => "p".to_string(),
            e => format!("p^{e}"),
        };
        if self.multiplicity.is_one() {
            write!(f, "c-Ind_J{} 1 [{scalar}]", self.inducing_theta)
        } else {
            write!(f, "(c-Ind_J{} 1)^{} [{scalar}]", self.inducing_theta, self.multiplicity)
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RzCell {
    pub a: i64,
    pub b: u32,
    pub terms: Vec<RzTerm>,
}

/// First page of the Čech spectral sequence for the cover by maximal-type strata.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RzPage {
    pub case: CaseSpec,
    /// Column indices `a = 1 - s`, ascending.
    pub columns: Vec<i64>,
    /// Row indices `b`, top row first.
    pub rows: Vec<u32>,
    /// Every grid position, zero cells included, row-major from the top.
    pub cells: Vec<RzCell>,
}

impl RzPage {
    pub fn cell(&self, a: i64, b: u32) -> Option<&RzCell> {
        self.cells.iter().find(|c| c.a == a && c.b == b)
    }
}

/// The lattices in a set of `s` maximal ones intersect in type `2θ` with multiplicity
/// `k_{s,θ}`; a type-`2θ` stratum contributes `H_c^{2(n-1)-b}(S_θ)` dualised and twisted by
/// `n - 1`, so the class of `H_c^{2k}(S_θ)` (eigenvalue `p^k`) sits in row `2(n-1-k)` with
/// scalar `p^{n-1-k}`.
pub fn rz_first_page(case: CaseSpec) -> Result<RzPage> {
    require_theta_max_one(case)?;
    let top = case.n - 1;
    let n_max = neighbours_of_type_zero(case)?
        .to_u32()
        .ok_or_else(|| Error::OutOfRange("too many columns".into()))?;
    let columns: Vec<i64> = (1..=n_max as i64).rev().map(|s| 1 - s).collect();
    let rows: Vec<u32> = (0..=2 * top).rev().collect();
    let mut cells = Vec::new();
    for &b in &rows {
        for &a in &columns {
            let s = (1 - a) as u32;
            let mut terms = Vec::new();
            for theta in 0..=1u32 {
                let k = k_mult(case, s, theta)?;
                if k.is_zero() {
                    continue;
                }
                // S_0 is a point, S_1 a projective line: classes in degrees 0..=2θ, even only
                for deg_half in 0..=theta {
                    if b == 2 * (top - deg_half) {
                        terms.push(RzTerm {
                            multiplicity: k.clone(),
                            inducing_theta: theta,
                            frobenius_exponent: top - deg_half,
                        });
                    }
                }
            }
            cells.push(RzCell { a, b, terms });
        }
    }
    Ok(RzPage {
        case,
        columns,
        rows,
        cells,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(v: u64) -> BigUint {
        BigUint::from(v)
    }

    fn space(kind: Kind, d: u32) -> FormSpace {
        FormSpace::new(kind, d).unwrap()
    }

    #[test]
    fn witt_indices() {
        assert_eq!(space(Kind::Symplectic, 4).delta, 2);
        assert_eq!(space(Kind::OrthogonalOdd, 5).delta, 2);
        assert_eq!(space(Kind::OrthogonalEvenSplit, 2).delta, 1);
        assert_eq!(space(Kind::OrthogonalEvenNonsplit, 2).delta, 0);
        assert_eq!(space(Kind::OrthogonalEvenNonsplit, 6).delta, 2);
        assert!(FormSpace::new(Kind::Symplectic, 3).is_err());
        assert!(FormSpace::new(Kind::OrthogonalEvenNonsplit, 0).is_err());
        assert!(FormSpace::new(Kind::OrthogonalOdd, 4).is_err());
    }

    #[test]
    fn count_examples() {
        assert_eq!(count_isotropic(space(Kind::Symplectic, 4), 1, 3).unwrap(), big(40));
        for p in [3, 5, 7, 11] {
            assert_eq!(count_isotropic(space(Kind::OrthogonalEvenSplit, 2), 1, p).unwrap(), big(2));
            for kind in Kind::ALL {
                for d in 0..6 {
                    if let Ok(sp) = FormSpace::new(kind, d) {
                        assert_eq!(count_isotropic(sp, 0, p).unwrap(), big(1));
                    }
                }
            }
        }
        assert!(matches!(
            count_isotropic(space(Kind::OrthogonalEvenNonsplit, 2), 1, 3),
            Err(Error::ExceedsWittIndex { r: 1, witt_index: 0 })
        ));
        assert!(count_isotropic(space(Kind::Symplectic, 2), 1, 9).is_err());
    }

    #[test]
    fn brute_force_examples() {
        let g = GramMatrix::standard(space(Kind::Symplectic, 4), 3).unwrap();
        assert_eq!(brute_force_isotropic(&g, 1, Exec::Sequential, false).unwrap(), 40);
        let id = GramMatrix::new(3, vec![vec![1]], true).unwrap();
        assert_eq!(brute_force_isotropic(&id, 0, Exec::Sequential, false).unwrap(), 1);
        let ns = GramMatrix::standard(space(Kind::OrthogonalEvenNonsplit, 2), 3).unwrap();
        assert_eq!(brute_force_isotropic(&ns, 1, Exec::Sequential, false).unwrap(), 0);
        let big_g = GramMatrix::standard(space(Kind::Symplectic, 8), 3).unwrap();
        assert!(matches!(
            brute_force_isotropic(&big_g, 1, Exec::Sequential, false),
            Err(Error::GuardExceeded(_))
        ));
        assert!(brute_force_isotropic(&big_g, 1, Exec::Sequential, true).is_ok());
    }

    #[test]
    fn gram_validation() {
        assert!(GramMatrix::new(3, vec![vec![1, 0], vec![0, 0]], true).is_err());
        assert!(GramMatrix::new(3, vec![vec![0, 1], vec![1, 0]], false).is_err());
        assert!(GramMatrix::new(3, vec![vec![0, 1], vec![2, 0]], false).is_ok());
        assert_eq!(non_square(3), 2);
        assert_eq!(non_square(7), 3);
    }

    #[test]
    fn formula_matches_brute_force() {
        let rows = oracle_table(&[3, 5], 5, Exec::default()).unwrap();
        assert!(rows.iter().all(|r| r.matches), "{:?}", rows.iter().find(|r| !r.matches));
    }

    #[test]
    fn beyond_witt_index_is_empty() {
        for kind in Kind::ALL {
            for d in 1..=4 {
                let Ok(sp) = FormSpace::new(kind, d) else { continue };
                let g = GramMatrix::standard(sp, 3).unwrap();
                assert_eq!(brute_force_isotropic(&g, sp.delta + 1, Exec::Sequential, false).unwrap(), 0);
            }
        }
    }

    #[test]
    fn theta_max_table() {
        let c = |n, s| CaseSpec::new(n, s, 3).unwrap();
        assert_eq!(theta_max(c(3, SplitCase::Odd)), 1);
        assert_eq!(theta_max(c(4, SplitCase::EvenSplit)), 2);
        assert_eq!(theta_max(c(4, SplitCase::EvenNonsplit)), 1);
        assert_eq!(theta_max(c(2, SplitCase::EvenSplit)), 1);
        assert!(CaseSpec::new(4, SplitCase::Odd, 3).is_err());
        assert!(CaseSpec::infer(4, None, 3).is_err());
        assert_eq!(CaseSpec::infer(5, None, 3).unwrap().split_case, SplitCase::Odd);
    }

    #[test]
    fn incidences() {
        for p in [3, 5, 7] {
            let n3 = CaseSpec::new(3, SplitCase::Odd, p).unwrap();
            assert_eq!(strata_incidence(n3, 0, 1, Direction::Above).unwrap(), big(p + 1));
            let n4 = CaseSpec::new(4, SplitCase::EvenNonsplit, p).unwrap();
            assert_eq!(strata_incidence(n4, 0, 1, Direction::Above).unwrap(), big(p * p + 1));
            for case in [
                n3,
                n4,
                CaseSpec::new(2, SplitCase::EvenSplit, p).unwrap(),
                CaseSpec::new(6, SplitCase::EvenSplit, p).unwrap(),
                CaseSpec::new(7, SplitCase::Odd, p).unwrap(),
            ] {
                assert_eq!(strata_incidence(case, 1, 0, Direction::Below).unwrap(), big(p + 1));
                for t in 0..=theta_max(case) {
                    assert_eq!(strata_incidence(case, t, t, Direction::Below).unwrap(), big(1));
                    assert_eq!(strata_incidence(case, t, t, Direction::Above).unwrap(), big(1));
                }
            }
            for n in [2, 4, 6, 8] {
                let case = CaseSpec::new(n, SplitCase::EvenSplit, p).unwrap();
                let t = theta_max(case);
                assert_eq!(strata_incidence(case, t - 1, t, Direction::Above).unwrap(), big(2));
            }
        }
        let n3 = CaseSpec::new(3, SplitCase::Odd, 3).unwrap();
        assert!(strata_incidence(n3, 0, 2, Direction::Above).is_err());
        assert!(strata_incidence(n3, 0, 1, Direction::Below).is_err());
    }

    #[test]
    fn k_mult_values() {
        let n3 = CaseSpec::new(3, SplitCase::Odd, 5).unwrap();
        assert_eq!(k_mult(n3, 2, 0).unwrap(), big(15));
        assert_eq!(k_mult(n3, 7, 0).unwrap(), big(0));
        let n2 = CaseSpec::new(2, SplitCase::EvenSplit, 3).unwrap();
        assert_eq!(k_mult(n2, 1, 0).unwrap(), big(0));
        assert_eq!(k_mult(n2, 2, 0).unwrap(), big(1));
        assert_eq!(k_mult(n2, 1, 1).unwrap(), big(1));
        assert_eq!(k_mult(n2, 2, 1).unwrap(), big(0));
        let n6 = CaseSpec::new(6, SplitCase::EvenSplit, 3).unwrap();
        assert!(matches!(k_mult(n6, 1, 0), Err(Error::ThetaMaxUnsupported(3))));
    }

    #[test]
    fn nu_values() {
        for p in [3, 5, 7, 11] {
            let cases = [
                (CaseSpec::new(2, SplitCase::EvenSplit, p).unwrap(), 1),
                (CaseSpec::new(3, SplitCase::Odd, p).unwrap(), p),
                (CaseSpec::new(4, SplitCase::EvenNonsplit, p).unwrap(), p * p),
            ];
            for (case, want) in cases {
                let v = nu(case).unwrap();
                assert_eq!(v, BigInt::from(want));
                let n = neighbours_of_type_zero(case).unwrap();
                assert_eq!(v, BigInt::from(n) - 1);
            }
        }
    }

    #[test]
    fn rz_pages() {
        let n2 = rz_first_page(CaseSpec::new(2, SplitCase::EvenSplit, 3).unwrap()).unwrap();
        assert_eq!(n2.columns, vec![-1, 0]);
        assert_eq!(n2.rows, vec![2, 1, 0]);
        assert_eq!(n2.cell(-1, 2).unwrap().terms[0].to_string(), "c-Ind_J0 1 [p]");
        assert_eq!(n2.cell(0, 2).unwrap().terms[0].to_string(), "c-Ind_J1 1 [p]");
        assert!(n2.cell(0, 1).unwrap().terms.is_empty());
        assert_eq!(n2.cell(0, 0).unwrap().terms[0].to_string(), "c-Ind_J1 1 [1]");
        assert!(n2.cell(-1, 0).unwrap().terms.is_empty());
        assert_eq!(n2.cells.len(), 6);

        let p = 3;
        let n3 = rz_first_page(CaseSpec::new(3, SplitCase::Odd, p).unwrap()).unwrap();
        assert_eq!(n3.rows, vec![4, 3, 2, 1, 0]);
        assert_eq!(n3.columns.len() as u64, p + 1);
        assert_eq!(n3.cell(-1, 4).unwrap().terms[0].multiplicity, big(6));
        assert_eq!(n3.cell(0, 4).unwrap().terms[0].frobenius_exponent, 2);
        assert_eq!(n3.cell(0, 2).unwrap().terms[0].frobenius_exponent, 1);
        for b in [3, 1, 0] {
            assert!(n3.cells.iter().filter(|c| c.b == b).all(|c| c.terms.is_empty()));
        }

        let n4 = rz_first_page(CaseSpec::new(4, SplitCase::EvenNonsplit, p).unwrap()).unwrap();
        assert_eq!(n4.rows.len(), n3.rows.len() + 2);
        for c3 in n3.cells.iter().filter(|c| !c.terms.is_empty()) {
            let c4 = n4.cell(c3.a, c3.b + 2).unwrap();
            assert_eq!(c4.terms.len(), c3.terms.len());
            assert_eq!(c4.terms[0].frobenius_exponent, c3.terms[0].frobenius_exponent + 1);
            assert_eq!(c4.terms[0].inducing_theta, c3.terms[0].inducing_theta);
        }
        assert!(n4.cells.iter().filter(|c| c.b < 2).all(|c| c.terms.is_empty()));
        let n4_cols = n4.columns.len() as u64;
        assert_eq!(n4_cols, p * p + 1);
        assert!(rz_first_page(CaseSpec::new(5, SplitCase::Odd, 3).unwrap()).is_err());
    }
}
