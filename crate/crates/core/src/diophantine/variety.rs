use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::pell::{pell_pair_signed, PELL_VAR};
use super::poly::CommPoly;
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SystemKind {
    Real { d: usize },
    Complex { d: usize, e: usize },
}

/// Where an equation comes from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EquationRole {
    /// `X² − (T² − 1)Y² = 1`
    Pell,
    /// `Y − (T − 1)Z = V`
    Residue,
    /// `V·U = 1`
    Unit,
    /// `T = S² + 2`, which keeps `T` away from ±1 over the reals.
    Shift,
    /// `T_{j+1} = ∏_{k≤j} (T_k² − 1)W_k · W_{j+1}`
    Link,
    Diophantine,
}

impl EquationRole {
    fn tag(self) -> &'static str {
        match self {
            EquationRole::Pell => "pell",
            EquationRole::Residue => "residue",
            EquationRole::Unit => "unit",
            EquationRole::Shift => "shift",
            EquationRole::Link => "link",
            EquationRole::Diophantine => "diophantine",
        }
    }

    fn from_tag(tag: &str) -> Option<Self> {
        [
            EquationRole::Pell,
            EquationRole::Residue,
            EquationRole::Unit,
            EquationRole::Shift,
            EquationRole::Link,
            EquationRole::Diophantine,
        ]
        .into_iter()
        .find(|r| r.tag() == tag)
    }
}

/// An equation `poly = 0`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Equation {
    pub role: EquationRole,
    pub poly: CommPoly,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VarietySystem {
    pub variables: Vec<String>,
    pub equations: Vec<Equation>,
}

/// A stand-in Diophantine equation `Q(σ, x₁, …, x_s) = 0`: the `sigma`
/// values are substituted, and slot `x_k` becomes the `k`-th `V` coordinate.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Dioph {
    pub q: CommPoly,
    #[serde(default)]
    pub sigma: BTreeMap<String, i64>,
    pub slots: Vec<String>,
}

/// Polynomial values for every system variable, in terms of `parameters`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Assignment {
    pub parameters: Vec<String>,
    pub values: BTreeMap<String, CommPoly>,
}

/// Integer data of a good solution: one `N_i` per row (real), or a `d × e`
/// matrix `N_ij` (complex).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SolutionData {
    Real(Vec<i64>),
    Complex(Vec<Vec<i64>>),
}

fn real_name(base: &str, i: usize) -> String {
    format!("{base}{i}")
}

fn complex_name(base: &str, i: usize, j: usize) -> String {
    format!("{base}{i}_{j}")
}

fn v(name: &str) -> CommPoly {
    CommPoly::var(name)
}

/// The three equations tying one `(X, Y, Z, U, V)` block to its `T`.
fn block_equations(names: &[String; 5], t: &CommPoly) -> [Equation; 3] {
    let [x, y, z, u, vv] = names.each_ref().map(|n| v(n));
    let one = CommPoly::one();
    let disc = &t.pow(2) - &one;
    [
        Equation {
            role: EquationRole::Pell,
            poly: &(&x.pow(2) - &(&disc * &y.pow(2))) - &one,
        },
        Equation {
            role: EquationRole::Residue,
            poly: &(&y - &(&(t - &one) * &z)) - &vv,
        },
        Equation {
            role: EquationRole::Unit,
            poly: &(&vv * &u) - &one,
        },
    ]
}

fn block_names(name: impl Fn(&str) -> String) -> [String; 5] {
    ["X", "Y", "Z", "U", "V"].map(name)
}

pub fn build_system(kind: SystemKind, dioph: Option<&Dioph>) -> Result<VarietySystem> {
    let mut variables = Vec::new();
    let mut equations = Vec::new();
    let slot_targets: Vec<String> = match kind {
        SystemKind::Real { d } => {
            if d == 0 {
                return Err(Error::Dimension("d must be at least 1".into()));
            }
            let t = v("T");
            for i in 1..=d {
                let names = block_names(|b| real_name(b, i));
                equations.extend(block_equations(&names, &t));
                variables.extend(names);
            }
            variables.extend(["T".to_string(), "S".to_string()]);
            equations.push(Equation {
                role: EquationRole::Shift,
                poly: &(&t - &v("S").pow(2)) - &CommPoly::int(2),
            });
            (1..=d).map(|i| real_name("V", i)).collect()
        }
        SystemKind::Complex { d, e } => {
            if d == 0 || e < 2 {
                return Err(Error::Dimension(
                    "complex systems need d >= 1 and e >= 2".into(),
                ));
            }
            for j in 1..=e {
                let t = v(&real_name("T", j));
                for i in 1..=d {
                    let names = block_names(|b| complex_name(b, i, j));
                    equations.extend(block_equations(&names, &t));
                    variables.extend(names);
                }
            }
            variables.extend((1..=e).map(|j| real_name("T", j)));
            variables.extend((1..=e).map(|j| real_name("W", j)));
            // j ranges over 1..e-1 so that no T_{e+1} appears
            let mut product = CommPoly::one();
            for j in 1..e {
                let tj = v(&real_name("T", j));
                let wj = v(&real_name("W", j));
                product = &product * &(&(&tj.pow(2) - &CommPoly::one()) * &wj);
                let rhs = &product * &v(&real_name("W", j + 1));
                equations.push(Equation {
                    role: EquationRole::Link,
                    poly: &v(&real_name("T", j + 1)) - &rhs,
                });
            }
            (1..=d).map(|i| complex_name("V", i, 1)).collect()
        }
    };
    if let Some(dioph) = dioph {
        equations.push(Equation {
            role: EquationRole::Diophantine,
            poly: dioph_equation(dioph, &slot_targets)?,
        });
    }
    let sys = VarietySystem {
        variables,
        equations,
    };
    debug_assert!(sys.undeclared().is_empty());
    Ok(sys)
}

fn dioph_equation(dioph: &Dioph, targets: &[String]) -> Result<CommPoly> {
    if dioph.slots.len() > targets.len() {
        return Err(Error::Dimension(format!(
            "{} slots but only {} V coordinates",
            dioph.slots.len(),
            targets.len()
        )));
    }
    let mut values: BTreeMap<String, CommPoly> = dioph
        .sigma
        .iter()
        .map(|(k, &n)| (k.clone(), CommPoly::int(n)))
        .collect();
    for (slot, target) in dioph.slots.iter().zip(targets) {
        if values.insert(slot.clone(), v(target)).is_some() {
            return Err(Error::Dimension(format!(
                "`{slot}` is both a slot and a parameter"
            )));
        }
    }
    if let Some(stray) = dioph
        .q
        .variables()
        .into_iter()
        .find(|x| !values.contains_key(x))
    {
        return Err(Error::MissingVariable(stray));
    }
    Ok(dioph.q.substitute(&values))
}

impl VarietySystem {
    /// Variables used by some equation but not declared.
    pub fn undeclared(&self) -> BTreeSet<String> {
        let declared: BTreeSet<&String> = self.variables.iter().collect();
        self.equations
            .iter()
            .flat_map(|e| e.poly.variables())
            .filter(|x| !declared.contains(x))
            .collect()
    }

    /// Line format: `vars: …`, then `role: poly = 0` per equation.
    pub fn parse_text(text: &str) -> Result<Self> {
        let mut variables = None;
        let mut equations = Vec::new();
        for (n, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (head, rest) = line
                .split_once(':')
                .ok_or_else(|| Error::parse(n + 1, 1, "expected `vars:` or `role: equation`"))?;
            if head.trim() == "vars" {
                variables = Some(rest.split_whitespace().map(String::from).collect());
                continue;
            }
            let role = EquationRole::from_tag(head.trim())
                .ok_or_else(|| Error::parse(n + 1, 1, format!("unknown role `{}`", head.trim())))?;
            let (lhs, rhs) = rest.split_once('=').unwrap_or((rest, "0"));
            let col = |e: Error| match e {
                Error::Parse {
                    column, message, ..
                } => Error::parse(n + 1, column, message),
                other => other,
            };
            let lhs: CommPoly = lhs.parse().map_err(col)?;
            let rhs: CommPoly = rhs.parse().map_err(col)?;
            equations.push(Equation {
                role,
                poly: &lhs - &rhs,
            });
        }
        let sys = VarietySystem {
            variables: variables.ok_or_else(|| Error::parse(1, 1, "missing `vars:` line"))?,
            equations,
        };
        match sys.undeclared().into_iter().next() {
            Some(x) => Err(Error::Dimension(format!("undeclared variable `{x}`"))),
            None => Ok(sys),
        }
    }
}

impl fmt::Display for VarietySystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "vars: {}", self.variables.join(" "))?;
        for eq in &self.equations {
            writeln!(f, "{}: {} = 0", eq.role.tag(), eq.poly)?;
        }
        Ok(())
    }
}

impl Assignment {
    /// Line format: `params: …`, then `name := poly`.
    pub fn parse_text(text: &str) -> Result<Self> {
        let mut parameters = Vec::new();
        let mut values = BTreeMap::new();
        for (n, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            if let Some(rest) = line.strip_prefix("params:") {
                parameters = rest.split_whitespace().map(String::from).collect();
                continue;
            }
            let (name, poly) = line
                .split_once(":=")
                .ok_or_else(|| Error::parse(n + 1, 1, "expected `name := polynomial`"))?;
            let poly: CommPoly = poly.parse().map_err(|e| match e {
                Error::Parse {
                    column, message, ..
                } => Error::parse(n + 1, column, message),
                other => other,
            })?;
            values.insert(name.trim().to_string(), poly);
        }
        Ok(Assignment { parameters, values })
    }
}

impl fmt::Display for Assignment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "params: {}", self.parameters.join(" "))?;
        for (name, p) in &self.values {
            writeln!(f, "{name} := {p}")?;
        }
        Ok(())
    }
}

/// Values of one block for the integer `n`, as polynomials in `T`.
fn block_values(n: i64) -> Result<[CommPoly; 5]> {
    if n == 0 {
        return Err(Error::ZeroParameter);
    }
    let (x, y) = pell_pair_signed(n);
    let big_n = CommPoly::int(n);
    // exact because Y(1) = n
    let z = (&y - &big_n).div_linear(PELL_VAR, &BigRational::one())?;
    let u = CommPoly::constant(BigRational::new(1.into(), n.into()));
    Ok([x, y, z, u, big_n])
}

fn compose(values: [CommPoly; 5], t: &CommPoly) -> [CommPoly; 5] {
    let at: BTreeMap<String, CommPoly> = [(PELL_VAR.to_string(), t.clone())].into();
    values.map(|p| p.substitute(&at))
}

/// Builds the good solution attached to the integer data.
///
/// Real case: `T = S² + 2` and `(X_i, Y_i)` is the Pell pair of `N_i`.
/// Complex case: `T₁ = t`, every `W_j = 1`, `T_{j+1} = ∏_{k≤j}(T_k² − 1)`.
pub fn construct_solution(data: &SolutionData) -> Result<Assignment> {
    let mut values = BTreeMap::new();
    match data {
        SolutionData::Real(ns) => {
            if ns.is_empty() {
                return Err(Error::Dimension("need at least one N".into()));
            }
            let s = v("S");
            let t = &s.pow(2) + &CommPoly::int(2);
            for (i, &n) in ns.iter().enumerate() {
                let names = block_names(|b| real_name(b, i + 1));
                for (name, p) in names.into_iter().zip(compose(block_values(n)?, &t)) {
                    values.insert(name, p);
                }
            }
            values.insert("T".into(), t);
            values.insert("S".into(), s);
            Ok(Assignment {
                parameters: vec!["S".into()],
                values,
            })
        }
        SolutionData::Complex(rows) => {
            let d = rows.len();
            let e = rows.first().map_or(0, Vec::len);
            if d == 0 || e < 2 || rows.iter().any(|r| r.len() != e) {
                return Err(Error::Dimension(
                    "complex data must be a d x e matrix with e >= 2".into(),
                ));
            }
            let mut t = v("t");
            let mut product = CommPoly::one();
            for j in 1..=e {
                for (i, row) in rows.iter().enumerate() {
                    let names = block_names(|b| complex_name(b, i + 1, j));
                    for (name, p) in names
                        .into_iter()
                        .zip(compose(block_values(row[j - 1])?, &t))
                    {
                        values.insert(name, p);
                    }
                }
                values.insert(real_name("T", j), t.clone());
                values.insert(real_name("W", j), CommPoly::one());
                product = &product * &(&t.pow(2) - &CommPoly::one());
                t = product.clone();
            }
            Ok(Assignment {
                parameters: vec!["t".into()],
                values,
            })
        }
    }
}

/// Substitutes the assignment into every equation; true iff each result
/// is identically zero.
pub fn verify_assignment(sys: &VarietySystem, a: &Assignment) -> Result<bool> {
    if let Some(missing) = sys.variables.iter().find(|x| !a.values.contains_key(*x)) {
        return Err(Error::MissingVariable(missing.clone()));
    }
    Ok(sys
        .equations
        .par_iter()
        .all(|eq| eq.poly.substitute(&a.values).is_zero()))
}

/// Exact rank of the Jacobian of `parameters → values` at `point`.
pub fn parametrization_rank(
    a: &Assignment,
    point: &BTreeMap<String, BigRational>,
) -> Result<usize> {
    let mut rows = Vec::with_capacity(a.values.len());
    for p in a.values.values() {
        let row = a
            .parameters
            .iter()
            .map(|x| p.derivative(x).eval(point))
            .collect::<Result<Vec<_>>>()?;
        rows.push(row);
    }
    Ok(rank(rows))
}

fn rank(mut m: Vec<Vec<BigRational>>) -> usize {
    let cols = m.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(pivot) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, pivot);
        let (top, rest) = m.split_at_mut(r + 1);
        let pivot_row = &top[r];
        for row in rest.iter_mut().filter(|row| !row[c].is_zero()) {
            let f = &row[c] / &pivot_row[c];
            for (x, p) in row[c..].iter_mut().zip(&pivot_row[c..]) {
                *x -= &f * p;
            }
        }
        r += 1;
    }
    r
}
