use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use super::{LpError, Rational};

pub type VarId = usize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Sense {
    Le,
    Eq,
    Ge,
}

impl Sense {
    pub fn as_str(self) -> &'static str {
        match self {
            Sense::Le => "<=",
            Sense::Eq => "=",
            Sense::Ge => ">=",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "<=" => Some(Sense::Le),
            "=" => Some(Sense::Eq),
            ">=" => Some(Sense::Ge),
            _ => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Variable {
    pub name: String,
    pub lb: Option<Rational>,
    pub ub: Option<Rational>,
}

impl Variable {
    pub fn is_fixed(&self) -> bool {
        matches!((&self.lb, &self.ub), (Some(a), Some(b)) if a == b)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Row {
    pub name: String,
    /// Sorted by variable, no zero coefficients, no repeats.
    pub terms: Vec<(VarId, Rational)>,
    pub sense: Sense,
    pub rhs: Rational,
}

/// Variables, inequality counts and equation counts. Finite variable
/// bounds count as inequalities; a variable with equal bounds counts as
/// one equation.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SizeReport {
    pub variables: usize,
    pub inequalities: usize,
    pub equations: usize,
}

/// A linear system over named rational variables (no objective).
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LinearProgram {
    vars: Vec<Variable>,
    rows: Vec<Row>,
    var_index: BTreeMap<String, VarId>,
    row_index: BTreeMap<String, usize>,
}

pub fn is_valid_lp_name(name: &str) -> bool {
    crate::matroid::is_valid_name(name)
}

/// Merge repeated variables, drop zeros and sort.
pub fn normalize_terms(terms: impl IntoIterator<Item = (VarId, Rational)>) -> Vec<(VarId, Rational)> {
    let mut acc: BTreeMap<VarId, Rational> = BTreeMap::new();
    for (v, c) in terms {
        let e = acc.entry(v).or_default();
        *e = &*e + &c;
    }
    acc.into_iter().filter(|(_, c)| !c.is_zero()).collect()
}

impl LinearProgram {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_var(&mut self, name: &str, lb: Option<Rational>, ub: Option<Rational>) -> Result<VarId, LpError> {
        if !is_valid_lp_name(name) {
            return Err(LpError::InvalidName(name.to_string()));
        }
        if self.var_index.contains_key(name) {
            return Err(LpError::DuplicateName(name.to_string()));
        }
        self.vars.push(Variable { name: name.to_string(), lb, ub });
        self.var_index.insert(name.to_string(), self.vars.len() - 1);
        Ok(self.vars.len() - 1)
    }

    /// Nonnegative variable.
    pub fn add_nonneg(&mut self, name: &str) -> Result<VarId, LpError> {
        self.add_var(name, Some(Rational::zero()), None)
    }

    pub fn add_free(&mut self, name: &str) -> Result<VarId, LpError> {
        self.add_var(name, None, None)
    }

    pub fn add_row(
        &mut self,
        name: &str,
        terms: impl IntoIterator<Item = (VarId, Rational)>,
        sense: Sense,
        rhs: Rational,
    ) -> Result<usize, LpError> {
        if !is_valid_lp_name(name) {
            return Err(LpError::InvalidName(name.to_string()));
        }
        if self.row_index.contains_key(name) {
            return Err(LpError::DuplicateName(name.to_string()));
        }
        let terms = normalize_terms(terms);
        if let Some((v, _)) = terms.iter().find(|(v, _)| *v >= self.vars.len()) {
            return Err(LpError::UnknownVariable(format!("#{v}")));
        }
        self.rows.push(Row { name: name.to_string(), terms, sense, rhs });
        self.row_index.insert(name.to_string(), self.rows.len() - 1);
        Ok(self.rows.len() - 1)
    }

    pub fn vars(&self) -> &[Variable] {
        &self.vars
    }

    pub fn rows(&self) -> &[Row] {
        &self.rows
    }

    pub fn var(&self, name: &str) -> Result<VarId, LpError> {
        self.var_index.get(name).copied().ok_or_else(|| LpError::UnknownVariable(name.to_string()))
    }

    pub fn var_name(&self, v: VarId) -> &str {
        &self.vars[v].name
    }

    pub fn set_bounds(&mut self, v: VarId, lb: Option<Rational>, ub: Option<Rational>) {
        self.vars[v].lb = lb;
        self.vars[v].ub = ub;
    }

    pub fn remove_row(&mut self, name: &str) -> Result<Row, LpError> {
        let i = *self.row_index.get(name).ok_or_else(|| LpError::UnknownRow(name.to_string()))?;
        let row = self.rows.remove(i);
        self.row_index = self.rows.iter().enumerate().map(|(k, r)| (r.name.clone(), k)).collect();
        Ok(row)
    }

    pub fn size(&self) -> SizeReport {
        let mut r = SizeReport { variables: self.vars.len(), ..Default::default() };
        for v in &self.vars {
            if v.is_fixed() {
                r.equations += 1;
            } else {
                r.inequalities += v.lb.is_some() as usize + v.ub.is_some() as usize;
            }
        }
        for row in &self.rows {
            match row.sense {
                Sense::Eq => r.equations += 1,
                _ => r.inequalities += 1,
            }
        }
        r
    }

    /// Copy with every variable and row name prefixed by `prefix/`.
    pub fn namespaced(&self, prefix: &str) -> LinearProgram {
        let mut out = LinearProgram::new();
        for v in &self.vars {
            out.add_var(&format!("{prefix}/{}", v.name), v.lb.clone(), v.ub.clone()).expect("prefix keeps names unique");
        }
        for r in &self.rows {
            out.add_row(&format!("{prefix}/{}", r.name), r.terms.iter().cloned(), r.sense, r.rhs.clone())
                .expect("prefix keeps names unique");
        }
        out
    }

    /// Append all variables and rows of `other`; returns the new id of each
    /// of its variables.
    pub fn append(&mut self, other: &LinearProgram) -> Result<Vec<VarId>, LpError> {
        let map: Vec<VarId> = other
            .vars
            .iter()
            .map(|v| self.add_var(&v.name, v.lb.clone(), v.ub.clone()))
            .collect::<Result<_, _>>()?;
        for r in &other.rows {
            self.add_row(&r.name, r.terms.iter().map(|(v, c)| (map[*v], c.clone())), r.sense, r.rhs.clone())?;
        }
        Ok(map)
    }

    /// Whether `x` satisfies every bound and row exactly.
    pub fn is_feasible_point(&self, x: &[Rational]) -> bool {
        if x.len() != self.vars.len() {
            return false;
        }
        for (v, val) in self.vars.iter().zip(x) {
            if v.lb.as_ref().is_some_and(|lb| val < lb) || v.ub.as_ref().is_some_and(|ub| val > ub) {
                return false;
            }
        }
        self.rows.iter().all(|r| {
            let lhs = r.terms.iter().fold(Rational::zero(), |acc, (v, c)| &acc + &(c * &x[*v]));
            match r.sense {
                Sense::Le => lhs <= r.rhs,
                Sense::Eq => lhs == r.rhs,
                Sense::Ge => lhs >= r.rhs,
            }
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn size_counts_bounds_and_fixed_vars() {
        let mut lp = LinearProgram::new();
        let x = lp.add_var("x", Some(0.into()), Some(1.into())).unwrap();
        let y = lp.add_var("y", Some(2.into()), Some(2.into())).unwrap();
        lp.add_free("z").unwrap();
        lp.add_row("r", [(x, 1.into()), (y, 1.into())], Sense::Le, 3.into()).unwrap();
        lp.add_row("q", [(x, 1.into())], Sense::Eq, 0.into()).unwrap();
        assert_eq!(lp.size(), SizeReport { variables: 3, inequalities: 3, equations: 2 });
    }

    #[test]
    fn terms_are_merged() {
        let mut lp = LinearProgram::new();
        let x = lp.add_nonneg("x").unwrap();
        lp.add_row("r", [(x, 1.into()), (x, (-1).into())], Sense::Le, 0.into()).unwrap();
        assert!(lp.rows()[0].terms.is_empty());
        assert!(matches!(lp.add_nonneg("x"), Err(LpError::DuplicateName(_))));
    }
}
