//! Exact linear-programming feasibility.
//!
//! Only feasibility is ever queried here, never an objective: the callers
//! need rational certificates (a point satisfying every constraint exactly)
//! or a definite `Infeasible`. The solver is a phase-1 simplex over
//! `Rational` with Bland's anti-cycling rule, so it terminates on every
//! input and is deterministic for a fixed constraint order.

use crate::linalg::dot;
use crate::rational::Rational;
use num_traits::{One, Zero};

/// A system `{ a·x = b, c·x >= d }` over rational variables.
///
/// Variables are unrestricted by default; [`Constraints::new_nonneg`]
/// declares them all nonnegative instead, which keeps the standardized
/// tableau small (no sign split and no bound rows).
#[derive(Clone, Debug, Default)]
pub struct Constraints {
    num_vars: usize,
    nonneg: bool,
    eq: Vec<(Vec<Rational>, Rational)>,
    ge: Vec<(Vec<Rational>, Rational)>,
}

impl Constraints {
    /// A system over unrestricted variables.
    pub fn new(num_vars: usize) -> Self {
        Constraints {
            num_vars,
            nonneg: false,
            eq: Vec::new(),
            ge: Vec::new(),
        }
    }

    /// A system whose variables all carry an implicit `x >= 0` bound.
    pub fn new_nonneg(num_vars: usize) -> Self {
        Constraints {
            num_vars,
            nonneg: true,
            eq: Vec::new(),
            ge: Vec::new(),
        }
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    /// Adds `coeffs · x = rhs`.
    pub fn require_eq(&mut self, coeffs: Vec<Rational>, rhs: Rational) {
        assert_eq!(coeffs.len(), self.num_vars, "constraint arity mismatch");
        self.eq.push((coeffs, rhs));
    }

    /// Adds `coeffs · x >= rhs`.
    pub fn require_ge(&mut self, coeffs: Vec<Rational>, rhs: Rational) {
        assert_eq!(coeffs.len(), self.num_vars, "constraint arity mismatch");
        self.ge.push((coeffs, rhs));
    }

    /// Exact check of a candidate point against every constraint.
    pub fn is_satisfied_by(&self, x: &[Rational]) -> bool {
        x.len() == self.num_vars
            && self.eq.iter().all(|(a, b)| dot(a, x) == *b)
            && self.ge.iter().all(|(c, d)| dot(c, x) >= *d)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Feasibility {
    /// A rational point satisfying every constraint exactly.
    Feasible(Vec<Rational>),
    Infeasible,
}

impl Feasibility {
    pub fn is_feasible(&self) -> bool {
        matches!(self, Feasibility::Feasible(_))
    }

    pub fn witness(&self) -> Option<&[Rational]> {
        match self {
            Feasibility::Feasible(x) => Some(x),
            Feasibility::Infeasible => None,
        }
    }
}

/// Decides feasibility of the system, producing an exact witness point.
///
/// Unboundedness is irrelevant: any feasible system has a basic feasible
/// point of the standardized form, and that point is returned.
pub fn lp_feasible(sys: &Constraints) -> Feasibility {
    let n = sys.num_vars;
    let m = sys.eq.len() + sys.ge.len();
    if m == 0 {
        return Feasibility::Feasible(vec![Rational::zero(); n]);
    }

    // Standard form: x = u - v with u, v >= 0; each `>=` row gets a surplus
    // variable s >= 0 (c·x - s = d); each row then gets an artificial.
    let n_struct = 2 * n + sys.ge.len();
    let n_total = n_struct + m;

    let mut a: Vec<Vec<Rational>> = Vec::with_capacity(m);
    let mut b: Vec<Rational> = Vec::with_capacity(m);
    for (coeffs, rhs) in sys.eq.iter().chain(sys.ge.iter()) {
        let mut row = vec![Rational::zero(); n_total];
        for (j, c) in coeffs.iter().enumerate() {
            row[j] = c.clone();
            row[n + j] = -c.clone();
        }
        a.push(row);
        b.push(rhs.clone());
    }
    for (i, _) in sys.ge.iter().enumerate() {
        let row_idx = sys.eq.len() + i;
        a[row_idx][2 * n + i] = -Rational::one();
    }
    // normalize rhs >= 0, then install the artificial basis
    for i in 0..m {
        if b[i] < Rational::zero() {
            b[i] = -b[i].clone();
            for x in a[i].iter_mut() {
                *x = -x.clone();
            }
        }
        a[i][n_struct + i] = Rational::one();
    }
    let mut basis: Vec<usize> = (0..m).map(|i| n_struct + i).collect();

    // Phase-1 objective: minimize the sum of artificials. Price out the
    // initial basis: reduced costs = c - sum of constraint rows over the
    // structural columns, objective value = -sum(b).
    let mut cost = vec![Rational::zero(); n_total];
    for j in 0..n_total {
        let mut red = if j >= n_struct {
            Rational::one()
        } else {
            Rational::zero()
        };
        for row in a.iter() {
            red -= &row[j];
        }
        // artificial columns start basic with reduced cost 0
        cost[j] = if j >= n_struct { Rational::zero() } else { red };
    }
    let mut obj: Rational = -b.iter().fold(Rational::zero(), |acc, x| acc + x);

    loop {
        // Bland: entering = lowest-index column with negative reduced cost
        let Some(enter) = (0..n_total).find(|&j| cost[j] < Rational::zero()) else {
            break;
        };
        // ratio test, ties broken by smallest basic variable index
        let mut leave: Option<(usize, Rational)> = None;
        for i in 0..m {
            if a[i][enter] > Rational::zero() {
                let ratio = &b[i] / &a[i][enter];
                match &leave {
                    None => leave = Some((i, ratio)),
                    Some((li, lr)) => {
                        if ratio < *lr || (ratio == *lr && basis[i] < basis[*li]) {
                            leave = Some((i, ratio));
                        }
                    }
                }
            }
        }
        let (pivot_row, _) = leave.expect("phase-1 objective is bounded below");

        // pivot
        let piv = a[pivot_row][enter].clone();
        for x in a[pivot_row].iter_mut() {
            *x = &*x / &piv;
        }
        b[pivot_row] = &b[pivot_row] / &piv;
        for i in 0..m {
            if i == pivot_row || a[i][enter].is_zero() {
                continue;
            }
            let f = a[i][enter].clone();
            for j in 0..n_total {
                let v = &a[i][j] - &f * &a[pivot_row][j];
                a[i][j] = v;
            }
            b[i] = &b[i] - &f * &b[pivot_row];
        }
        if !cost[enter].is_zero() {
            let f = cost[enter].clone();
            for j in 0..n_total {
                let v = &cost[j] - &f * &a[pivot_row][j];
                cost[j] = v;
            }
            obj = &obj - &f * &b[pivot_row];
        }
        basis[pivot_row] = enter;
    }

    if !obj.is_zero() {
        return Feasibility::Infeasible;
    }

    let mut values = vec![Rational::zero(); n_total];
    for (i, &var) in basis.iter().enumerate() {
        values[var] = b[i].clone();
    }
    let witness: Vec<Rational> = (0..n)
        .map(|j| &values[j] - &values[n + j])
        .collect();
    debug_assert!(sys.is_satisfied_by(&witness));
    Feasibility::Feasible(witness)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    #[test]
    fn bounded_interval_is_feasible() {
        // x >= 1, -x >= -2
        let mut sys = Constraints::new(1);
        sys.require_ge(vec![rat(1)], rat(1));
        sys.require_ge(vec![rat(-1)], rat(-2));
        let out = lp_feasible(&sys);
        let w = out.witness().expect("feasible");
        assert!(sys.is_satisfied_by(w));
        assert!(w[0] >= rat(1) && w[0] <= rat(2));
    }

    #[test]
    fn contradictory_bounds_are_infeasible() {
        // x >= 1, -x >= 0
        let mut sys = Constraints::new(1);
        sys.require_ge(vec![rat(1)], rat(1));
        sys.require_ge(vec![rat(-1)], rat(0));
        assert_eq!(lp_feasible(&sys), Feasibility::Infeasible);
    }

    #[test]
    fn symmetric_dependence() {
        // l1 - l2 = 0, l1 >= 1, l2 >= 1
        let mut sys = Constraints::new(2);
        sys.require_eq(vec![rat(1), rat(-1)], rat(0));
        sys.require_ge(vec![rat(1), rat(0)], rat(1));
        sys.require_ge(vec![rat(0), rat(1)], rat(1));
        let out = lp_feasible(&sys);
        let w = out.witness().expect("feasible");
        assert!(sys.is_satisfied_by(w));
        assert_eq!(w, &[rat(1), rat(1)]);
    }

    #[test]
    fn empty_system_is_feasible() {
        let sys = Constraints::new(3);
        let out = lp_feasible(&sys);
        assert_eq!(out.witness().unwrap(), &[rat(0), rat(0), rat(0)]);
    }

    #[test]
    fn inconsistent_equalities() {
        let mut sys = Constraints::new(2);
        sys.require_eq(vec![rat(1), rat(1)], rat(1));
        sys.require_eq(vec![rat(2), rat(2)], rat(3));
        assert_eq!(lp_feasible(&sys), Feasibility::Infeasible);
    }

    #[test]
    fn negative_rhs_handled() {
        // x + y = -3, x >= -5, y >= 0
        let mut sys = Constraints::new(2);
        sys.require_eq(vec![rat(1), rat(1)], rat(-3));
        sys.require_ge(vec![rat(1), rat(0)], rat(-5));
        sys.require_ge(vec![rat(0), rat(1)], rat(0));
        let out = lp_feasible(&sys);
        assert!(sys.is_satisfied_by(out.witness().unwrap()));
    }

    /// Brute-force feasibility by vertex enumeration inside a huge box.
    ///
    /// All constraints (equalities, inequalities, box faces) are collected;
    /// every subset of size n is solved as an equality system and the
    /// solutions are checked against the full system. Boxing makes the
    /// region a polytope, so nonemptiness implies a vertex; the box is far
    /// larger than any vertex coordinate reachable with these small data.
    fn brute_force_feasible(sys: &Constraints) -> bool {
        let n = sys.num_vars();
        let big = rat(1_000_000);
        let mut rows: Vec<(Vec<Rational>, Rational)> = Vec::new();
        for (a, b) in sys.eq.iter().chain(sys.ge.iter()) {
            rows.push((a.clone(), b.clone()));
        }
        for i in 0..n {
            let mut e = vec![rat(0); n];
            e[i] = rat(1);
            rows.push((e.clone(), big.clone()));
            rows.push((e, -big.clone()));
        }
        let m = rows.len();
        let mut subset: Vec<usize> = (0..n).collect();
        if n == 0 {
            return sys.is_satisfied_by(&[]);
        }
        loop {
            let mat = crate::linalg::Matrix::from_rows(
                subset.iter().map(|&i| rows[i].0.clone()).collect(),
            );
            let rhs: Vec<Rational> = subset.iter().map(|&i| rows[i].1.clone()).collect();
            if let Some(x) = mat.solve_consistent(&rhs) {
                if sys.is_satisfied_by(&x) {
                    return true;
                }
            }
            // next n-subset
            let mut i = n;
            let mut advanced = false;
            while i > 0 {
                i -= 1;
                if subset[i] != i + m - n {
                    subset[i] += 1;
                    for j in i + 1..n {
                        subset[j] = subset[j - 1] + 1;
                    }
                    advanced = true;
                    break;
                }
            }
            if !advanced {
                return false;
            }
        }
    }

    proptest::proptest! {
        #![proptest_config(proptest::prelude::ProptestConfig::with_cases(128))]

        #[test]
        fn simplex_matches_vertex_enumeration(
            n in 1usize..4,
            raw_eq in proptest::collection::vec(proptest::collection::vec(-3i64..4, 4), 0..3),
            raw_ge in proptest::collection::vec(proptest::collection::vec(-3i64..4, 4), 0..5),
        ) {
            let mut sys = Constraints::new(n);
            for row in &raw_eq {
                sys.require_eq(row[..n].iter().map(|&x| rat(x)).collect(), rat(row[3]));
            }
            for row in &raw_ge {
                sys.require_ge(row[..n].iter().map(|&x| rat(x)).collect(), rat(row[3]));
            }
            let brute = brute_force_feasible(&sys);
            match lp_feasible(&sys) {
                Feasibility::Feasible(w) => {
                    proptest::prop_assert!(sys.is_satisfied_by(&w));
                    proptest::prop_assert!(brute);
                }
                Feasibility::Infeasible => proptest::prop_assert!(!brute),
            }
        }
    }
}
