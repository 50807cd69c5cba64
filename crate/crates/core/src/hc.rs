//! Harish-Chandra induction `R_L^G 1 ⊠ ρ_{S'}` and restriction `*R_{G'}^G ρ_S` along block
//! Levi subgroups `GL(a) × Sp(2θ')`, computed by adding or removing leg-length-0 hooks in
//! both rows of a symbol with hook lengths summing to `a`.

use std::collections::BTreeMap;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::symbols::{reduce, Symbol};

/// A finite multiset of symbols of one common rank, iterated in lexicographic order.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct SymbolMultiset {
    entries: BTreeMap<Symbol, u32>,
}

impl SymbolMultiset {
    pub fn new() -> Self {
        Self::default()
    }

    /// Adds `mult` copies of `symbol`. Panics if the rank differs from the members already
    /// present, since a mixed-rank multiset is always a logic error upstream.
    pub fn insert(&mut self, symbol: Symbol, mult: u32) {
        if mult == 0 {
            return;
        }
        if let Some(r) = self.rank() {
            assert_eq!(r, symbol.rank(), "inhomogeneous multiset: adding {symbol}");
        }
        *self.entries.entry(symbol).or_insert(0) += mult;
    }

    pub fn rank(&self) -> Option<u32> {
        self.entries.keys().next().map(Symbol::rank)
    }

    pub fn mult(&self, symbol: &Symbol) -> u32 {
        self.entries.get(symbol).copied().unwrap_or(0)
    }

    pub fn contains(&self, symbol: &Symbol) -> bool {
        self.entries.contains_key(symbol)
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Number of distinct symbols.
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    /// Sum of multiplicities.
    pub fn total(&self) -> u64 {
        self.entries.values().map(|&m| m as u64).sum()
    }

    pub fn is_multiplicity_free(&self) -> bool {
        self.entries.values().all(|&m| m == 1)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Symbol, u32)> {
        self.entries.iter().map(|(s, &m)| (s, m))
    }

    pub fn symbols(&self) -> impl Iterator<Item = &Symbol> {
        self.entries.keys()
    }

    /// Multiset sum.
    pub fn union(&self, other: &SymbolMultiset) -> SymbolMultiset {
        let mut out = self.clone();
        out.extend_from(other);
        out
    }

    pub fn extend_from(&mut self, other: &SymbolMultiset) {
        for (s, m) in other.iter() {
            self.insert(s.clone(), m);
        }
    }

    /// Members with multiplicity, drawn from `self`, whose symbol satisfies `keep`.
    pub fn filter(&self, mut keep: impl FnMut(&Symbol) -> bool) -> SymbolMultiset {
        SymbolMultiset {
            entries: self
                .entries
                .iter()
                .filter(|(s, _)| keep(s))
                .map(|(s, &m)| (s.clone(), m))
                .collect(),
        }
    }
}

impl FromIterator<Symbol> for SymbolMultiset {
    fn from_iter<I: IntoIterator<Item = Symbol>>(iter: I) -> Self {
        let mut out = SymbolMultiset::new();
        for s in iter {
            out.insert(s, 1);
        }
        out
    }
}

#[derive(Serialize, Deserialize)]
struct Entry {
    symbol: Symbol,
    mult: u32,
}

impl Serialize for SymbolMultiset {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let v: Vec<Entry> = self
            .iter()
            .map(|(symbol, mult)| Entry {
                symbol: symbol.clone(),
                mult,
            })
            .collect();
        v.serialize(s)
    }
}

impl<'de> Deserialize<'de> for SymbolMultiset {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v: Vec<Entry> = Vec::deserialize(d)?;
        let mut out = SymbolMultiset::new();
        for e in v {
            if e.mult == 0 {
                return Err(serde::de::Error::custom("multiplicity must be positive"));
            }
            if out.rank().is_some_and(|r| r != e.symbol.rank()) {
                return Err(serde::de::Error::custom("multiset members differ in rank"));
            }
            out.insert(e.symbol, e.mult);
        }
        Ok(out)
    }
}

/// Number of production paths that landed on an already-produced symbol.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct HookAudit {
    pub paths: u64,
    pub duplicate_paths: u64,
}

/// Positions `t` in `row` that can move to `t + k` with leg length 0.
fn addable(row: &[u32], k: u32) -> Vec<usize> {
    if k == 0 {
        return vec![usize::MAX];
    }
    (0..row.len())
        .filter(|&i| match row.get(i + 1) {
            Some(&next) => row[i] + k < next,
            None => true,
        })
        .collect()
}

/// Positions `z` in `row` that can move to `z - k` with leg length 0.
fn removable(row: &[u32], k: u32) -> Vec<usize> {
    if k == 0 {
        return vec![usize::MAX];
    }
    (0..row.len())
        .filter(|&i| {
            row[i] >= k
                && match i.checked_sub(1) {
                    Some(p) => row[p] < row[i] - k,
                    None => true,
                }
        })
        .collect()
}

fn moved(row: &[u32], pos: usize, up: bool, k: u32) -> Vec<u32> {
    let mut out = row.to_vec();
    if pos != usize::MAX {
        out[pos] = if up { out[pos] + k } else { out[pos] - k };
    }
    out
}

fn hook_moves(x: &[u32], y: &[u32], a: u32, up: bool) -> (SymbolMultiset, HookAudit) {
    let mut out = SymbolMultiset::new();
    let mut audit = HookAudit::default();
    let sites = if up { addable } else { removable };
    for a1 in 0..=a {
        let a2 = a - a1;
        for px in sites(x, a1) {
            let nx = moved(x, px, up, a1);
            for py in sites(y, a2) {
                let ny = moved(y, py, up, a2);
                let s = reduce(nx.clone(), ny).expect("hook moves keep rows valid");
                audit.paths += 1;
                if out.contains(&s) {
                    audit.duplicate_paths += 1;
                } else {
                    out.insert(s, 1);
                }
            }
        }
    }
    (out, audit)
}

/// Induction with its production-path audit.
pub fn induce_audited(s_prime: &Symbol, a: u32) -> (SymbolMultiset, HookAudit) {
    // one shift supplies the leading 0 of each row as a movable slot
    let (x, y) = s_prime.shifted(1);
    hook_moves(&x, &y, a, true)
}

/// `R_L^G 1 ⊠ ρ_{S'}` for `L = GL(a) × Sp(2θ')`: every symbol obtained by adding an
/// `a1`-hook to the first row and an `a2`-hook to the second, both of leg length 0, with
/// `a1 + a2 = a`.
pub fn induce(s_prime: &Symbol, a: u32) -> SymbolMultiset {
    induce_audited(s_prime, a).0
}

pub fn restrict_audited(s: &Symbol, a: u32) -> Result<(SymbolMultiset, HookAudit)> {
    let rank = s.rank();
    if a > rank {
        return Err(Error::RestrictionTooLarge { by: a, rank });
    }
    Ok(hook_moves(s.first(), s.second(), a, false))
}

/// `*R_{G'}^G ρ_S` to `Sp(2(θ - a))`: every symbol obtained by removing leg-length-0 hooks
/// of total length `a` from the two rows.
pub fn restrict(s: &Symbol, a: u32) -> Result<SymbolMultiset> {
    restrict_audited(s, a).map(|(m, _)| m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symbols::enumerate_symbols;

    fn s(t: &str) -> Symbol {
        t.parse().unwrap()
    }

    fn set(items: &[&str]) -> SymbolMultiset {
        items.iter().map(|t| s(t)).collect()
    }

    #[test]
    fn worked_induction_example() {
        let got = induce(&s("(0 3;1)"), 3);
        let want = set(&[
            "(0 3;4)",
            "(0 4;3)",
            "(0 5;2)",
            "(0 6;1)",
            "(1 3;3)",
            "(2 3;2)",
            "(0 1 6;1 2)",
            "(0 3 4;1 2)",
        ]);
        assert_eq!(got, want);
    }

    #[test]
    fn induce_by_zero_is_identity() {
        for theta in 0..5 {
            for sym in enumerate_symbols(theta) {
                assert_eq!(induce(&sym, 0), set(&[&sym.to_string()]));
            }
        }
    }

    #[test]
    fn rank_one_principal_series() {
        assert_eq!(induce(&s("(0;—)"), 1), set(&["(1;—)", "(0 1;1)"]));
    }

    #[test]
    fn restriction_examples() {
        assert_eq!(restrict(&s("(0 1;1)"), 1).unwrap(), set(&["(0;—)"]));
        for k in 0..6 {
            for a in 0..=k {
                assert_eq!(
                    restrict(&Symbol::trivial(k), a).unwrap(),
                    set(&[&Symbol::trivial(k - a).to_string()])
                );
            }
        }
        assert!(restrict(&s("(0 1 2;—)"), 1).unwrap().is_empty());
        assert!(matches!(
            restrict(&s("(0 1;1)"), 2),
            Err(Error::RestrictionTooLarge { by: 2, rank: 1 })
        ));
    }

    #[test]
    fn adjointness_defect_and_multiplicity_freeness() {
        let by_rank: Vec<Vec<Symbol>> = (0..=8).map(enumerate_symbols).collect();
        for theta_p in 0..=8u32 {
            for a in 0..=(8 - theta_p) {
                for sp in &by_rank[theta_p as usize] {
                    let (ind, audit) = induce_audited(sp, a);
                    assert_eq!(audit.duplicate_paths, 0, "induce {sp} by {a}");
                    for t in ind.symbols() {
                        assert_eq!(t.defect(), sp.defect());
                        assert_eq!(t.rank(), theta_p + a);
                    }
                    for big in &by_rank[(theta_p + a) as usize] {
                        let res = restrict(big, a).unwrap();
                        assert_eq!(ind.contains(big), res.contains(sp), "{sp} vs {big} by {a}");
                    }
                }
            }
        }
        for theta in 0..=8u32 {
            for big in &by_rank[theta as usize] {
                for a in 0..=theta {
                    let (res, audit) = restrict_audited(big, a).unwrap();
                    assert_eq!(audit.duplicate_paths, 0);
                    assert!(res.symbols().all(|t| t.defect() == big.defect()));
                }
            }
        }
    }

    #[test]
    fn json_is_sorted() {
        let m = set(&["(1;—)", "(0 1;1)"]);
        assert_eq!(
            serde_json::to_string(&m).unwrap(),
            r#"[{"symbol":{"X":[0,1],"Y":[1]},"mult":1},{"symbol":{"X":[1],"Y":[]},"mult":1}]"#
        );
        let back: SymbolMultiset = serde_json::from_str(&serde_json::to_string(&m).unwrap()).unwrap();
        assert_eq!(back, m);
    }
}
