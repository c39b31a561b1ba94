//! Exact evaluation of the edge-count bounds for hypertrees and the
//! per-instance audit table. All arithmetic is exact rational; verdicts
//! never touch floating point.

use std::fmt;

use num_rational::Ratio;

use crate::error::{Error, Result};
use crate::hypergraph::Hypergraph;
use crate::search::{is_edge_maximal, is_edge_minimal, is_hypertree, max_chain_length,
    max_chain_length_semicycle_free};
use crate::util::binomial;

pub type Rational = Ratio<i128>;

fn rational(n: i128, d: i128) -> Rational {
    Ratio::new(n, d)
}

fn binom(n: u32, r: i64) -> Rational {
    if r < 0 {
        return Rational::from_integer(0);
    }
    Rational::from_integer(binomial(n as u64, r as u64) as i128)
}

/// The named bound formulas. `ChainLower` and `EdgeMaximalLower` bound the
/// edge count from below, the others from above; the two conjectured bounds
/// are reported but never gate an audit.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum BoundName {
    /// m >= n - (k-1) for chain-connected hypergraphs once n >= (k-1)^2.
    ChainLower,
    /// m <= C(n, k-1) for semicycle-free hypergraphs.
    SemicycleUpper,
    /// m <= C(n, k-1) / (k-l+1) for l-hypertrees, 1 <= l <= k.
    LHypertreeUpper,
    /// m <= C(n,k-1)/(k-1) - C(n,k-2)/(k-1)^3 for 2-hypertrees.
    TwoHypertreeRefined,
    /// m <= n(n-1)(n-k+1)/2 for edge-minimal hypertrees.
    EdgeMinimalUpper,
    /// m <= l * n(n-1)/2 for edge-minimal l-hypertrees.
    EdgeMinimalLUpper,
    /// m >= (1/(k(k-1))) * ((n-k+1)/(n-k+2)) * C(n, k-1) for edge-maximal
    /// hypertrees, via the Turán-number lower bound.
    EdgeMaximalLower,
    /// Conjectured m <= C(n,2)/(k-1) for edge-minimal hypertrees.
    EdgeMinimalConjecturedUpper,
    /// Conjectured m >= C(n,2)/2 - O(n) for 3-uniform edge-maximal
    /// hypertrees; the linear slack is reported as exactly n.
    EdgeMaximalConjecturedLower,
}

impl BoundName {
    pub fn as_str(self) -> &'static str {
        match self {
            BoundName::ChainLower => "chain_lower",
            BoundName::SemicycleUpper => "semicycle_upper",
            BoundName::LHypertreeUpper => "l_hypertree_upper",
            BoundName::TwoHypertreeRefined => "two_hypertree_refined",
            BoundName::EdgeMinimalUpper => "edge_minimal_upper",
            BoundName::EdgeMinimalLUpper => "edge_minimal_l_upper",
            BoundName::EdgeMaximalLower => "edge_maximal_lower",
            BoundName::EdgeMinimalConjecturedUpper => "edge_minimal_conjectured_upper",
            BoundName::EdgeMaximalConjecturedLower => "edge_maximal_conjectured_lower",
        }
    }

    pub fn is_lower(self) -> bool {
        matches!(
            self,
            BoundName::ChainLower
                | BoundName::EdgeMaximalLower
                | BoundName::EdgeMaximalConjecturedLower
        )
    }

    pub fn is_conjectured(self) -> bool {
        matches!(
            self,
            BoundName::EdgeMinimalConjecturedUpper | BoundName::EdgeMaximalConjecturedLower
        )
    }
}

impl std::str::FromStr for BoundName {
    type Err = Error;

    fn from_str(s: &str) -> Result<BoundName> {
        for name in ALL_BOUNDS {
            if name.as_str() == s {
                return Ok(name);
            }
        }
        Err(Error::UnknownBound(s.to_string()))
    }
}

pub const ALL_BOUNDS: [BoundName; 9] = [
    BoundName::ChainLower,
    BoundName::SemicycleUpper,
    BoundName::LHypertreeUpper,
    BoundName::TwoHypertreeRefined,
    BoundName::EdgeMinimalUpper,
    BoundName::EdgeMinimalLUpper,
    BoundName::EdgeMaximalLower,
    BoundName::EdgeMinimalConjecturedUpper,
    BoundName::EdgeMaximalConjecturedLower,
];

/// Exact value of the named bound. `l` is required for the two
/// chain-length-sensitive bounds and ignored elsewhere.
pub fn evaluate_bound(name: BoundName, n: u32, k: usize, l: Option<usize>) -> Result<Rational> {
    if k < 1 || (n as usize) < k {
        return Err(Error::BadParameter(format!(
            "bound needs n >= k >= 1, got n = {n}, k = {k}"
        )));
    }
    let ki = k as i128;
    let ni = n as i128;
    match name {
        BoundName::ChainLower => Ok(Rational::from_integer(ni - (ki - 1))),
        BoundName::SemicycleUpper => Ok(binom(n, k as i64 - 1)),
        BoundName::LHypertreeUpper => {
            let l = l.ok_or_else(|| {
                Error::BadParameter("l_hypertree_upper needs a chain-length bound l".into())
            })?;
            if l < 1 || l > k {
                return Err(Error::BadParameter(format!(
                    "l_hypertree_upper needs 1 <= l <= k, got l = {l}, k = {k}"
                )));
            }
            Ok(binom(n, k as i64 - 1) / rational(ki - l as i128 + 1, 1))
        }
        BoundName::TwoHypertreeRefined => {
            let km1 = ki - 1;
            Ok(binom(n, k as i64 - 1) / rational(km1, 1)
                - binom(n, k as i64 - 2) / rational(km1 * km1 * km1, 1))
        }
        BoundName::EdgeMinimalUpper => {
            Ok(rational(ni * (ni - 1) * (ni - ki + 1), 2))
        }
        BoundName::EdgeMinimalLUpper => {
            let l = l.ok_or_else(|| {
                Error::BadParameter("edge_minimal_l_upper needs a chain-length bound l".into())
            })? as i128;
            Ok(rational(l * ni * (ni - 1), 2))
        }
        BoundName::EdgeMaximalLower => Ok(rational(1, ki * (ki - 1))
            * rational(ni - ki + 1, ni - ki + 2)
            * binom(n, k as i64 - 1)),
        BoundName::EdgeMinimalConjecturedUpper => Ok(binom(n, 2) / rational(ki - 1, 1)),
        BoundName::EdgeMaximalConjecturedLower => {
            Ok(binom(n, 2) / rational(2, 1) - rational(ni, 1))
        }
    }
}

/// `|E| / C(n, 2)`, the quantity preserved exactly by gluing.
pub fn edge_ratio(h: &Hypergraph) -> Rational {
    Rational::from_integer(h.edge_count() as i128) / binom(h.n(), 2)
}

/// Hypertree-related facts about an instance, used to decide which bounds
/// apply. `None` means unknown (that bound is reported as not applicable).
#[derive(Clone, Copy, Default, Debug)]
pub struct InstanceFlags {
    pub hypertree: Option<bool>,
    pub max_chain_len: Option<usize>,
    pub edge_minimal: Option<bool>,
    pub edge_maximal: Option<bool>,
    /// False when the flags were supplied rather than computed here.
    pub verified: bool,
}

/// Computes the flags by running the decision procedures.
pub fn compute_flags(h: &Hypergraph) -> InstanceFlags {
    let hypertree = is_hypertree(h).holds;
    let max_chain_len = if hypertree {
        max_chain_length_semicycle_free(h, None)
    } else {
        max_chain_length(h, None)
    };
    let (edge_minimal, edge_maximal) = if hypertree {
        (
            Some(is_edge_minimal(h).expect("hypertree").holds),
            Some(is_edge_maximal(h).expect("hypertree").holds),
        )
    } else {
        (None, None)
    };
    InstanceFlags {
        hypertree: Some(hypertree),
        max_chain_len: Some(max_chain_len),
        edge_minimal,
        edge_maximal,
        verified: true,
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum RowStatus {
    Satisfied,
    Violated,
    NotApplicable,
}

#[derive(Clone, Debug)]
pub struct BoundRow {
    pub name: BoundName,
    pub value: Option<Rational>,
    pub status: RowStatus,
    /// Conjectured rows never gate the audit outcome.
    pub gates: bool,
}

#[derive(Clone, Debug)]
pub struct BoundsReport {
    pub instance: String,
    pub n: u32,
    pub k: usize,
    pub edge_count: u64,
    pub edge_ratio: Rational,
    pub flags: InstanceFlags,
    pub rows: Vec<BoundRow>,
}

impl BoundsReport {
    /// True iff no applicable non-conjectural row is violated.
    pub fn passed(&self) -> bool {
        self.rows
            .iter()
            .all(|r| !r.gates || r.status != RowStatus::Violated)
    }

    /// One line per row: `BOUND <name> <num>/<den> <SAT|VIOLATED|NA>`.
    pub fn machine_lines(&self) -> String {
        let mut out = String::new();
        for row in &self.rows {
            let value = match &row.value {
                Some(v) => format!("{}/{}", v.numer(), v.denom()),
                None => "-".to_string(),
            };
            let status = match row.status {
                RowStatus::Satisfied => "SAT",
                RowStatus::Violated => "VIOLATED",
                RowStatus::NotApplicable => "NA",
            };
            out.push_str(&format!("BOUND {} {} {}\n", row.name.as_str(), value, status));
        }
        out
    }
}

impl fmt::Display for BoundsReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "bounds audit: {} (n={} k={} m={})",
            self.instance, self.n, self.k, self.edge_count
        )?;
        writeln!(
            f,
            "edge ratio m/C(n,2) = {}/{}",
            self.edge_ratio.numer(),
            self.edge_ratio.denom()
        )?;
        writeln!(
            f,
            "{:<32} {:>4} {:>18} {:>10}",
            "bound", "dir", "value", "status"
        )?;
        for row in &self.rows {
            let dir = if row.name.is_lower() { ">=" } else { "<=" };
            let value = match &row.value {
                Some(v) if v.is_integer() => format!("{}", v.numer()),
                Some(v) => format!("{}/{}", v.numer(), v.denom()),
                None => "-".to_string(),
            };
            let status = match row.status {
                RowStatus::Satisfied => "SAT",
                RowStatus::Violated => "VIOLATED",
                RowStatus::NotApplicable => "NA",
            };
            let marker = if row.gates { "" } else { " (informational)" };
            writeln!(
                f,
                "{:<32} {:>4} {:>18} {:>10}{}",
                row.name.as_str(),
                dir,
                value,
                status,
                marker
            )?;
        }
        Ok(())
    }
}

/// Evaluates every bound whose hypothesis the flags establish and compares
/// it with the actual edge count. Unknown or unmet hypotheses produce
/// not-applicable rows; the conjectured bounds are always informational.
pub fn audit(h: &Hypergraph, flags: InstanceFlags, instance: &str) -> BoundsReport {
    let n = h.n();
    let k = h.k();
    let m = Rational::from_integer(h.edge_count() as i128);
    let hypertree = flags.hypertree.unwrap_or(false);
    let chain_len = flags.max_chain_len;
    let two_hypertree = hypertree && chain_len.is_some_and(|l| l <= 2);
    let l_in_range = chain_len.is_some_and(|l| (1..=k).contains(&l)) && hypertree;

    let mut rows = Vec::new();
    let mut push = |name: BoundName, applicable: bool, l: Option<usize>| {
        let (value, status) = if !applicable {
            (None, RowStatus::NotApplicable)
        } else {
            let value = evaluate_bound(name, n, k, l).expect("applicable row has valid params");
            let ok = if name.is_lower() { m >= value } else { m <= value };
            (
                Some(value),
                if ok {
                    RowStatus::Satisfied
                } else {
                    RowStatus::Violated
                },
            )
        };
        rows.push(BoundRow {
            name,
            value,
            status,
            gates: !name.is_conjectured(),
        });
    };

    // the chain-connectivity lower bound carries the explicit hypothesis
    // n >= (k-1)^2
    push(
        BoundName::ChainLower,
        hypertree && (n as usize) >= (k - 1) * (k - 1),
        None,
    );
    push(BoundName::SemicycleUpper, hypertree, None);
    push(
        BoundName::LHypertreeUpper,
        l_in_range,
        chain_len.filter(|_| l_in_range).map(|l| l.max(1)),
    );
    push(BoundName::TwoHypertreeRefined, two_hypertree && k >= 2, None);
    push(
        BoundName::EdgeMinimalUpper,
        flags.edge_minimal == Some(true),
        None,
    );
    push(
        BoundName::EdgeMinimalLUpper,
        flags.edge_minimal == Some(true) && chain_len.is_some(),
        chain_len.map(|l| l.max(1)),
    );
    push(
        BoundName::EdgeMaximalLower,
        flags.edge_maximal == Some(true),
        None,
    );
    push(
        BoundName::EdgeMinimalConjecturedUpper,
        flags.edge_minimal == Some(true) && k >= 2,
        None,
    );
    push(
        BoundName::EdgeMaximalConjecturedLower,
        flags.edge_maximal == Some(true) && k == 3,
        None,
    );

    BoundsReport {
        instance: instance.to_string(),
        n,
        k,
        edge_count: h.edge_count() as u64,
        edge_ratio: edge_ratio(h),
        flags,
        rows,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{edge_maximal_matching_tree, edge_minimal_grid};

    fn int(v: i128) -> Rational {
        Rational::from_integer(v)
    }

    #[test]
    fn bound_values() {
        assert_eq!(
            evaluate_bound(BoundName::SemicycleUpper, 7, 3, None).unwrap(),
            int(21)
        );
        assert_eq!(
            evaluate_bound(BoundName::TwoHypertreeRefined, 16, 3, None).unwrap(),
            int(58)
        );
        assert_eq!(
            evaluate_bound(BoundName::EdgeMaximalLower, 8, 3, None).unwrap(),
            int(4)
        );
        assert_eq!(
            evaluate_bound(BoundName::ChainLower, 9, 3, None).unwrap(),
            int(7)
        );
        assert_eq!(
            evaluate_bound(BoundName::LHypertreeUpper, 16, 3, Some(2)).unwrap(),
            int(60)
        );
        assert_eq!(
            evaluate_bound(BoundName::EdgeMinimalUpper, 16, 3, None).unwrap(),
            int(16 * 15 * 14 / 2)
        );
        assert_eq!(
            evaluate_bound(BoundName::EdgeMinimalConjecturedUpper, 16, 3, None).unwrap(),
            int(60)
        );
        assert!(evaluate_bound(BoundName::LHypertreeUpper, 16, 3, Some(5)).is_err());
        assert!(evaluate_bound(BoundName::LHypertreeUpper, 16, 3, None).is_err());
    }

    #[test]
    fn bound_names_round_trip() {
        for name in ALL_BOUNDS {
            assert_eq!(name.as_str().parse::<BoundName>().unwrap(), name);
        }
        assert!(matches!(
            "no_such_bound".parse::<BoundName>(),
            Err(Error::UnknownBound(_))
        ));
    }

    #[test]
    fn refined_two_hypertree_bound_strictly_improves_the_generic_one() {
        for k in 3..=6usize {
            for n in (k as u32 + 1)..=30 {
                let refined =
                    evaluate_bound(BoundName::TwoHypertreeRefined, n, k, None).unwrap();
                let generic =
                    evaluate_bound(BoundName::LHypertreeUpper, n, k, Some(2)).unwrap();
                assert!(refined < generic, "n={n} k={k}");
            }
        }
    }

    #[test]
    fn audit_of_the_grid() {
        let grid = edge_minimal_grid(4, 3).unwrap();
        let report = audit(&grid, compute_flags(&grid), "grid");
        assert!(report.passed(), "{report}");
        let find = |name: BoundName| {
            report
                .rows
                .iter()
                .find(|r| r.name == name)
                .unwrap()
                .clone()
        };
        assert_eq!(find(BoundName::TwoHypertreeRefined).value, Some(int(58)));
        assert_eq!(find(BoundName::LHypertreeUpper).value, Some(int(60)));
        assert_eq!(find(BoundName::EdgeMinimalUpper).value, Some(int(1680)));
        assert_eq!(
            find(BoundName::EdgeMinimalConjecturedUpper).value,
            Some(int(60))
        );
        assert_eq!(find(BoundName::EdgeMaximalLower).status, RowStatus::NotApplicable);
    }

    #[test]
    fn audit_of_the_matching_tree() {
        let tree = edge_maximal_matching_tree(8).unwrap();
        let report = audit(&tree, compute_flags(&tree), "matching-tree");
        assert!(report.passed(), "{report}");
        let row = report
            .rows
            .iter()
            .find(|r| r.name == BoundName::EdgeMaximalLower)
            .unwrap();
        assert_eq!(row.value, Some(int(4)));
        assert_eq!(row.status, RowStatus::Satisfied);
        assert!(report.machine_lines().contains("BOUND edge_maximal_lower 4/1 SAT"));
    }

    #[test]
    fn chain_lower_bound_needs_enough_vertices() {
        // 6-uniform, 9 vertices: below the (k-1)^2 threshold the row is NA
        let h = Hypergraph::new(6, 9, [[1u32, 2, 3, 4, 5, 6]]).unwrap();
        let flags = InstanceFlags {
            hypertree: Some(true),
            max_chain_len: Some(1),
            ..Default::default()
        };
        let report = audit(&h, flags, "tiny");
        let row = report
            .rows
            .iter()
            .find(|r| r.name == BoundName::ChainLower)
            .unwrap();
        assert_eq!(row.status, RowStatus::NotApplicable);
    }
}
