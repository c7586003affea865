//! Machine verification of the SL3 x Q weight table.
//!
//! Prehomogeneous SL3 x Q modules built from trivial, standard and dual
//! standard summands fall into a short list of cases. For each case the
//! repository ships one witnessing set of quasitorus weights, stored as a
//! data file (`data/sl3_table.json`) so the verifier and any external
//! tooling read the same single source. [`verify_all_cases`] replays every
//! row through the weight criterion, the open-orbit test, and a rank check.
//!
//! Sign conventions: the determinant invariant of three standard summands
//! carries the sum of their weights, and the pairing invariant between a
//! standard summand and the dual one carries the difference — dual
//! coordinates transform by the inverse character.

use crate::condstar::{self, StarReport, WeightCollection};
use crate::lattice::{FgAbelianGroup, GroupElement, LatticeError};
use crate::rational::Int;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Sl3Error {
    #[error("unknown case label `{0}`")]
    UnknownCase(String),
    #[error("table has no row `{0}`")]
    MissingRow(String),
    #[error("row `{case}` is malformed: {reason}")]
    MalformedRow { case: String, reason: String },
    #[error("module shape with {standard} standard and {dual} dual summands is not one of the classified cases")]
    UnsupportedModuleShape { standard: usize, dual: usize },
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error("table file is not valid JSON: {0}")]
    Parse(String),
}

/// Summand kinds occurring in the classified modules.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Summand {
    /// One-dimensional trivial summand.
    Trivial,
    /// The standard n-dimensional representation.
    Standard,
    /// Its dual.
    DualStandard,
}

impl Summand {
    pub fn dim(&self, n: usize) -> usize {
        match self {
            Summand::Trivial => 1,
            Summand::Standard | Summand::DualStandard => n,
        }
    }
}

/// A classified SL_n x Q module: tagged summands with quasitorus weights.
///
/// Shapes are restricted at construction to the classified list: either no
/// dual summand and at most three standard ones, or exactly one dual
/// summand alongside one or two standard ones. Trivial summands are
/// unrestricted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuleSpec {
    n: usize,
    group: FgAbelianGroup,
    summands: Vec<(Summand, GroupElement)>,
}

impl ModuleSpec {
    pub fn new(
        n: usize,
        group: FgAbelianGroup,
        summands: Vec<(Summand, GroupElement)>,
    ) -> Result<Self, Sl3Error> {
        let standard = summands
            .iter()
            .filter(|(s, _)| *s == Summand::Standard)
            .count();
        let dual = summands
            .iter()
            .filter(|(s, _)| *s == Summand::DualStandard)
            .count();
        let allowed = match dual {
            0 => standard <= 3,
            1 => (1..=2).contains(&standard),
            _ => false,
        };
        if !allowed {
            return Err(Sl3Error::UnsupportedModuleShape { standard, dual });
        }
        for (_, e) in &summands {
            if !group.contains(e) {
                return Err(Sl3Error::Lattice(LatticeError::FreeRankMismatch {
                    expected: group.free_rank(),
                    got: e.free_part().len(),
                }));
            }
        }
        Ok(ModuleSpec { n, group, summands })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn group(&self) -> &FgAbelianGroup {
        &self.group
    }

    pub fn summands(&self) -> &[(Summand, GroupElement)] {
        &self.summands
    }

    pub fn module_dim(&self) -> usize {
        self.summands.iter().map(|(s, _)| s.dim(self.n)).sum()
    }
}

/// Weights of the coordinate functions: an n-dimensional summand
/// contributes its weight n times, a trivial summand once.
pub fn coordinate_weights(spec: &ModuleSpec) -> WeightCollection {
    let weights = spec
        .summands
        .iter()
        .map(|(s, e)| (e.clone(), s.dim(spec.n)))
        .collect();
    WeightCollection::new(spec.group.clone(), weights).expect("weights validated at construction")
}

/// Weights of the invariant generators the quasitorus must move with an
/// open orbit: trivial-summand weights, plus the determinant weight when
/// three standard summands are present, plus one pairing weight per
/// standard summand when a dual is present.
pub fn theta_weights(spec: &ModuleSpec) -> Vec<GroupElement> {
    let group = &spec.group;
    let trivials: Vec<&GroupElement> = spec
        .summands
        .iter()
        .filter(|(s, _)| *s == Summand::Trivial)
        .map(|(_, e)| e)
        .collect();
    let standards: Vec<&GroupElement> = spec
        .summands
        .iter()
        .filter(|(s, _)| *s == Summand::Standard)
        .map(|(_, e)| e)
        .collect();
    let dual = spec
        .summands
        .iter()
        .find(|(s, _)| *s == Summand::DualStandard)
        .map(|(_, e)| e);

    let mut theta: Vec<GroupElement> = Vec::new();
    match dual {
        Some(vd) => {
            theta.extend(trivials.iter().map(|e| (*e).clone()));
            for v in &standards {
                theta.push(group.sub(v, vd).expect("same group"));
            }
        }
        None if standards.len() == 3 => {
            let det = group.sum(standards.iter().copied()).expect("same group");
            theta.push(det);
            theta.extend(trivials.iter().map(|e| (*e).clone()));
        }
        None => {
            theta.extend(trivials.iter().map(|e| (*e).clone()));
        }
    }
    theta
}

/// The ten table rows, with the optional extra trivial summand on the rows
/// that admit it instantiated both ways.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CaseLabel {
    OneA,
    OneB,
    OneC,
    OneD { r: u8 },
    OneE,
    TwoA,
    TwoB { r: u8 },
    TwoC,
    ThreeL2,
    ThreeL3,
}

impl CaseLabel {
    /// Every verifiable instantiation, in table order.
    pub fn all() -> Vec<CaseLabel> {
        vec![
            CaseLabel::OneA,
            CaseLabel::OneB,
            CaseLabel::OneC,
            CaseLabel::OneD { r: 0 },
            CaseLabel::OneD { r: 1 },
            CaseLabel::OneE,
            CaseLabel::TwoA,
            CaseLabel::TwoB { r: 0 },
            CaseLabel::TwoB { r: 1 },
            CaseLabel::TwoC,
            CaseLabel::ThreeL2,
            CaseLabel::ThreeL3,
        ]
    }

    pub fn row_id(&self) -> &'static str {
        match self {
            CaseLabel::OneA => "1a",
            CaseLabel::OneB => "1b",
            CaseLabel::OneC => "1c",
            CaseLabel::OneD { .. } => "1d",
            CaseLabel::OneE => "1e",
            CaseLabel::TwoA => "2a",
            CaseLabel::TwoB { .. } => "2b",
            CaseLabel::TwoC => "2c",
            CaseLabel::ThreeL2 => "3,l=2",
            CaseLabel::ThreeL3 => "3,l=3",
        }
    }

    fn r(&self) -> Option<u8> {
        match self {
            CaseLabel::OneD { r } | CaseLabel::TwoB { r } => Some(*r),
            _ => None,
        }
    }
}

impl std::fmt::Display for CaseLabel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self.r() {
            Some(r) => write!(f, "{},r={}", self.row_id(), r),
            None => write!(f, "{}", self.row_id()),
        }
    }
}

/// Parses a selector like `1a`, `1d`, `2b,r=1`, or `3,l=2` into the labels
/// it denotes (a bare `1d`/`2b` means both values of the parameter).
pub fn parse_case_selector(s: &str) -> Result<Vec<CaseLabel>, Sl3Error> {
    let text: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    let (row, rest) = if let Some(rest) = text.strip_prefix("3,l=2") {
        ("3,l=2", rest)
    } else if let Some(rest) = text.strip_prefix("3,l=3") {
        ("3,l=3", rest)
    } else if text.len() >= 2 && text.is_char_boundary(2) {
        (&text[..2], &text[2..])
    } else {
        return Err(Sl3Error::UnknownCase(s.to_string()));
    };
    let r = match rest {
        "" => None,
        ",r=0" => Some(0u8),
        ",r=1" => Some(1u8),
        _ => return Err(Sl3Error::UnknownCase(s.to_string())),
    };
    let labels = match (row, r) {
        ("1a", None) => vec![CaseLabel::OneA],
        ("1b", None) => vec![CaseLabel::OneB],
        ("1c", None) => vec![CaseLabel::OneC],
        ("1d", None) => vec![CaseLabel::OneD { r: 0 }, CaseLabel::OneD { r: 1 }],
        ("1d", Some(r)) => vec![CaseLabel::OneD { r }],
        ("1e", None) => vec![CaseLabel::OneE],
        ("2a", None) => vec![CaseLabel::TwoA],
        ("2b", None) => vec![CaseLabel::TwoB { r: 0 }, CaseLabel::TwoB { r: 1 }],
        ("2b", Some(r)) => vec![CaseLabel::TwoB { r }],
        ("2c", None) => vec![CaseLabel::TwoC],
        ("3,l=2", None) => vec![CaseLabel::ThreeL2],
        ("3,l=3", None) => vec![CaseLabel::ThreeL3],
        _ => return Err(Sl3Error::UnknownCase(s.to_string())),
    };
    Ok(labels)
}

/// One row of the shipped weight table.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableRow {
    pub case: String,
    pub dim_q: usize,
    #[serde(default)]
    pub standard: Vec<Vec<i64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dual: Option<Vec<i64>>,
    #[serde(default)]
    pub trivial: Vec<Vec<i64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub trivial_if_r1: Option<Vec<i64>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Sl3Table {
    pub rows: Vec<TableRow>,
}

const BUNDLED_TABLE: &str = include_str!("../data/sl3_table.json");

impl Sl3Table {
    /// The table shipped with the repository.
    pub fn bundled() -> Sl3Table {
        Sl3Table::from_json(BUNDLED_TABLE).expect("bundled table parses")
    }

    pub fn from_json(s: &str) -> Result<Sl3Table, Sl3Error> {
        serde_json::from_str(s).map_err(|e| Sl3Error::Parse(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("table serializes")
    }

    pub fn row(&self, id: &str) -> Option<&TableRow> {
        self.rows.iter().find(|r| r.case == id)
    }
}

fn int_vec(v: &[i64]) -> Vec<Int> {
    v.iter().map(|&x| Int::from(x)).collect()
}

/// Builds the module of a table row for a given label instantiation.
pub fn module_spec_for(table: &Sl3Table, label: CaseLabel) -> Result<ModuleSpec, Sl3Error> {
    let row = table
        .row(label.row_id())
        .ok_or_else(|| Sl3Error::MissingRow(label.row_id().to_string()))?;

    let mut all_vecs: Vec<&Vec<i64>> = row.standard.iter().collect();
    if let Some(d) = &row.dual {
        all_vecs.push(d);
    }
    all_vecs.extend(row.trivial.iter());
    if label.r() == Some(1) {
        match &row.trivial_if_r1 {
            Some(w) => all_vecs.push(w),
            None => {
                return Err(Sl3Error::MalformedRow {
                    case: row.case.clone(),
                    reason: "label requests the optional trivial weight, row has none".into(),
                })
            }
        }
    }
    // the group's rank is read off the weights themselves; rows with no
    // weights at all fall back to the declared rank
    let rank = all_vecs.first().map_or(row.dim_q, |v| v.len());
    if let Some(bad) = all_vecs.iter().find(|v| v.len() != rank) {
        return Err(Sl3Error::MalformedRow {
            case: row.case.clone(),
            reason: format!("weight {bad:?} has length {} != {rank}", bad.len()),
        });
    }
    let group = FgAbelianGroup::free(rank);

    let mut summands = Vec::new();
    for v in &row.standard {
        summands.push((Summand::Standard, group.element(int_vec(v), vec![])?));
    }
    if let Some(v) = &row.dual {
        summands.push((Summand::DualStandard, group.element(int_vec(v), vec![])?));
    }
    for v in &row.trivial {
        summands.push((Summand::Trivial, group.element(int_vec(v), vec![])?));
    }
    if label.r() == Some(1) {
        let v = row.trivial_if_r1.as_ref().expect("checked above");
        summands.push((Summand::Trivial, group.element(int_vec(v), vec![])?));
    }
    ModuleSpec::new(3, group, summands)
}

/// Verification outcome for one label instantiation.
#[derive(Clone, Debug)]
pub struct CaseReport {
    pub label: CaseLabel,
    pub condition_star: StarReport,
    pub open_orbit: bool,
    pub dim_q_expected: usize,
    pub dim_q_actual: usize,
    pub theta_weights: Vec<GroupElement>,
}

impl CaseReport {
    pub fn dim_q_matches(&self) -> bool {
        self.dim_q_expected == self.dim_q_actual
    }

    pub fn pass(&self) -> bool {
        self.condition_star.holds && self.open_orbit && self.dim_q_matches()
    }
}

/// Checks one table row instantiation: the weight criterion, the
/// open-orbit condition on the invariant weights, and the rank declared by
/// the row.
pub fn verify_case(table: &Sl3Table, label: CaseLabel) -> Result<CaseReport, Sl3Error> {
    let spec = module_spec_for(table, label)?;
    let row = table.row(label.row_id()).expect("row found above");
    let collection = coordinate_weights(&spec);
    let condition_star = condstar::check_condition_star(&collection);
    let theta = theta_weights(&spec);
    let open_orbit = condstar::has_open_quasitorus_orbit(spec.group(), &theta)?;
    Ok(CaseReport {
        label,
        condition_star,
        open_orbit,
        dim_q_expected: row.dim_q,
        dim_q_actual: spec.group().free_rank(),
        theta_weights: theta,
    })
}

/// Aggregate verification of one table row (both parameter values where the
/// row has the optional weight).
#[derive(Clone, Debug)]
pub struct RowReport {
    pub case: String,
    pub reports: Vec<CaseReport>,
}

impl RowReport {
    pub fn pass(&self) -> bool {
        !self.reports.is_empty() && self.reports.iter().all(|r| r.pass())
    }
}

#[derive(Clone, Debug)]
pub struct TableReport {
    pub rows: Vec<RowReport>,
}

impl TableReport {
    pub fn pass(&self) -> bool {
        self.rows.iter().all(|r| r.pass())
    }
}

/// Verifies every row of the table, in table order.
pub fn verify_all_cases(table: &Sl3Table) -> Result<TableReport, Sl3Error> {
    let mut rows = Vec::with_capacity(table.rows.len());
    for row in &table.rows {
        let labels = parse_case_selector(&row.case)?;
        let mut reports = Vec::with_capacity(labels.len());
        for label in labels {
            reports.push(verify_case(table, label)?);
        }
        rows.push(RowReport {
            case: row.case.clone(),
            reports,
        });
    }
    Ok(TableReport { rows })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::condstar::free_configuration;

    #[test]
    fn bundled_table_has_ten_rows() {
        let t = Sl3Table::bundled();
        assert_eq!(t.rows.len(), 10);
        let ids: Vec<&str> = t.rows.iter().map(|r| r.case.as_str()).collect();
        assert_eq!(
            ids,
            ["1a", "1b", "1c", "1d", "1e", "2a", "2b", "2c", "3,l=2", "3,l=3"]
        );
    }

    #[test]
    fn selector_parsing() {
        assert_eq!(parse_case_selector("1a").unwrap(), vec![CaseLabel::OneA]);
        assert_eq!(
            parse_case_selector("1d").unwrap(),
            vec![CaseLabel::OneD { r: 0 }, CaseLabel::OneD { r: 1 }]
        );
        assert_eq!(
            parse_case_selector("2b,r=1").unwrap(),
            vec![CaseLabel::TwoB { r: 1 }]
        );
        assert_eq!(
            parse_case_selector("3,l=2").unwrap(),
            vec![CaseLabel::ThreeL2]
        );
        assert!(parse_case_selector("2a,r=1").is_err());
        assert!(parse_case_selector("4x").is_err());
        assert!(parse_case_selector("").is_err());
    }

    #[test]
    fn coordinate_weights_multiplicities() {
        let t = Sl3Table::bundled();
        let spec = module_spec_for(&t, CaseLabel::TwoA).unwrap();
        let w = coordinate_weights(&spec);
        assert_eq!(w.total_multiplicity(), 9);
        let cfg = free_configuration(&w);
        let plus = cfg
            .vectors()
            .iter()
            .filter(|v| v[0] == crate::rational::rat(1))
            .count();
        assert_eq!(plus, 6);

        let spec_1b = module_spec_for(&t, CaseLabel::OneB).unwrap();
        let w = coordinate_weights(&spec_1b);
        assert_eq!(w.total_multiplicity(), 3);
        assert_eq!(w.group().free_rank(), 0);

        let spec_1a = module_spec_for(&t, CaseLabel::OneA).unwrap();
        assert_eq!(coordinate_weights(&spec_1a).total_multiplicity(), 0);
    }

    #[test]
    fn theta_weights_by_case() {
        let t = Sl3Table::bundled();
        // determinant weight: sum of the three standard weights
        let spec = module_spec_for(&t, CaseLabel::TwoA).unwrap();
        let theta = theta_weights(&spec);
        assert_eq!(theta.len(), 1);
        assert_eq!(theta[0].free_part(), &[Int::from(1)]);

        // pairing weight: difference with the dual weight
        let spec = module_spec_for(&t, CaseLabel::ThreeL2).unwrap();
        let theta = theta_weights(&spec);
        assert_eq!(theta.len(), 1);
        assert_eq!(theta[0].free_part(), &[Int::from(2)]);

        let spec = module_spec_for(&t, CaseLabel::ThreeL3).unwrap();
        let theta = theta_weights(&spec);
        assert_eq!(theta.len(), 2);
        assert_eq!(theta[0].free_part(), &[Int::from(2), Int::from(1)]);
        assert_eq!(theta[1].free_part(), &[Int::from(1), Int::from(2)]);

        // case 1 with the optional trivial weight
        let spec = module_spec_for(&t, CaseLabel::OneD { r: 1 }).unwrap();
        let theta = theta_weights(&spec);
        assert_eq!(theta.len(), 1);
        assert_eq!(theta[0].free_part(), &[Int::from(1)]);
    }

    #[test]
    fn every_case_verifies() {
        let t = Sl3Table::bundled();
        for label in CaseLabel::all() {
            let report = verify_case(&t, label).unwrap();
            assert!(report.pass(), "case {label} failed: {report:?}");
        }
        let table_report = verify_all_cases(&t).unwrap();
        assert!(table_report.pass());
        assert_eq!(table_report.rows.len(), 10);
    }

    #[test]
    fn vacuous_case_passes_vacuously() {
        let t = Sl3Table::bundled();
        let report = verify_case(&t, CaseLabel::OneA).unwrap();
        assert!(report.pass());
        assert!(report.theta_weights.is_empty());
        assert_eq!(report.dim_q_actual, 0);
    }

    #[test]
    fn shape_constraints_from_the_classification() {
        // case 1: r <= d; case 2: d >= r+1; case 3: d >= r + (l-1);
        // and l + r/2 >= d+1 whenever l >= d
        let t = Sl3Table::bundled();
        for label in CaseLabel::all() {
            let spec = module_spec_for(&t, label).unwrap();
            let d = spec.group().free_rank();
            let std = spec
                .summands()
                .iter()
                .filter(|(s, _)| *s == Summand::Standard)
                .count();
            let dual = spec
                .summands()
                .iter()
                .filter(|(s, _)| *s == Summand::DualStandard)
                .count();
            let r = spec
                .summands()
                .iter()
                .filter(|(s, _)| *s == Summand::Trivial)
                .count();
            let l = std + dual;
            if dual == 1 {
                assert!(d >= r + (l - 1), "{label}");
            } else if std == 3 {
                assert!(d >= r + 1, "{label}");
            } else {
                assert!(r <= d, "{label}");
            }
            // the halfspace-counting bound needs hyperplanes to exist
            if d >= 1 && l >= d {
                assert!(2 * l + r >= 2 * (d + 1), "{label}");
            }
        }
    }

    #[test]
    fn perturbed_rows_fail() {
        let base = Sl3Table::bundled();

        let corrupt = |id: &str, f: &dyn Fn(&mut TableRow)| -> Sl3Table {
            let mut t = base.clone();
            let row = t.rows.iter_mut().find(|r| r.case == id).unwrap();
            f(row);
            t
        };

        // empty weights in positive rank: nothing spans
        let t = corrupt("1a", &|r| r.dim_q = 1);
        // rank is read from weights; with none, the declared rank is used
        let rep = verify_case(&t, CaseLabel::OneA).unwrap();
        assert!(!rep.pass());

        // doubling every weight leaves a proper subgroup
        let t = corrupt("2a", &|r| {
            r.standard = vec![vec![2], vec![2], vec![-2]];
        });
        let rep = verify_case(&t, CaseLabel::TwoA).unwrap();
        assert!(!rep.condition_star.holds);

        // collapsing the two deep trivial weights breaks the open orbit
        let t = corrupt("1e", &|r| {
            r.trivial = vec![vec![-1, -1], vec![-1, -1]];
        });
        let rep = verify_case(&t, CaseLabel::OneE).unwrap();
        assert!(!rep.open_orbit);

        // a degenerate determinant weight breaks the open orbit
        let t = corrupt("2b", &|r| {
            r.standard = vec![vec![1, 0], vec![0, 1], vec![-1, -1]];
        });
        let rep = verify_case(&t, CaseLabel::TwoB { r: 0 }).unwrap();
        assert!(!rep.open_orbit);

        // flipping the dual weight collapses the pairing weight
        let t = corrupt("3,l=2", &|r| r.dual = Some(vec![1]));
        let rep = verify_case(&t, CaseLabel::ThreeL2).unwrap();
        assert!(!rep.pass());

        // one-sided weights are not 2-spanning
        let t = corrupt("1d", &|r| {
            r.standard = vec![vec![1], vec![1]];
        });
        let rep = verify_case(&t, CaseLabel::OneD { r: 0 }).unwrap();
        assert!(!rep.condition_star.holds);

        // wrong declared rank
        let t = corrupt("2c", &|r| r.dim_q = 2);
        let rep = verify_case(&t, CaseLabel::TwoC).unwrap();
        assert!(!rep.dim_q_matches());
        assert!(!rep.pass());

        // all other perturbable rows: swap a weight for a duplicate
        let t = corrupt("2c", &|r| {
            r.trivial = vec![vec![-1, -1, -2], vec![-1, -1, -2]];
        });
        assert!(!verify_case(&t, CaseLabel::TwoC).unwrap().open_orbit);

        let t = corrupt("3,l=3", &|r| r.dual = Some(vec![1, 1]));
        assert!(!verify_case(&t, CaseLabel::ThreeL3).unwrap().pass());

        let t = corrupt("1b", &|r| {
            r.dim_q = 1;
            r.standard = vec![vec![0]];
        });
        assert!(!verify_case(&t, CaseLabel::OneB).unwrap().pass());

        let t = corrupt("1c", &|r| {
            r.dim_q = 1;
            r.standard = vec![vec![2], vec![2]];
        });
        assert!(!verify_case(&t, CaseLabel::OneC).unwrap().pass());
    }

    #[test]
    fn unsupported_shapes_rejected() {
        let g = FgAbelianGroup::free(1);
        let e = g.element_i64(&[1], &[]).unwrap();
        // four standard summands
        let bad = ModuleSpec::new(
            3,
            g.clone(),
            vec![
                (Summand::Standard, e.clone()),
                (Summand::Standard, e.clone()),
                (Summand::Standard, e.clone()),
                (Summand::Standard, e.clone()),
            ],
        );
        assert!(matches!(
            bad,
            Err(Sl3Error::UnsupportedModuleShape { standard: 4, dual: 0 })
        ));
        // dual with no standard partner
        let bad = ModuleSpec::new(3, g, vec![(Summand::DualStandard, e)]);
        assert!(bad.is_err());
    }
}
