//! Finite-dimensional differential graded Lie algebras given by structure
//! constants: axiom validation, Maurer-Cartan residuals, the gauge action of
//! degree-0 elements, and the flow cross-check.
//!
//! A model is a graded basis, sparse bracket constants `[e_i, e_j] = sum_k
//! c^k_{ij} e_k`, and a differential `d e_i = sum_k d^k_i e_k`. Nothing is
//! assumed: [`FiniteDgl::validate`] checks degree bookkeeping, graded
//! antisymmetry, graded Jacobi, Leibniz and `d^2 = 0` on every basis tuple,
//! reporting each violated instance.
//!
//! For a degree-0 element `x` whose adjoint action is nilpotent, the gauge
//! action on a Maurer-Cartan element `a` is the time-1 flow of
//! `u' = dx - ad_x(u)`, `u(0) = a`, in closed form
//!
//! ```text
//! x * a = sum_i (-1)^i ad_x^i(a)/i! + sum_i (-1)^i ad_x^i(dx)/(i+1)!
//! ```
//!
//! [`FiniteDgl::flow_transport`] solves the same flow by its polynomial
//! coefficient recursion and must agree exactly; [`FiniteDgl::gauge_preserves_mc`]
//! checks that the result is again Maurer-Cartan.

use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;

use num::bigint::BigInt;
use num::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::arith::factorial;
use crate::rat::{parse_rat, rat_string, Rat};

#[derive(Debug, Error)]
pub enum DglError {
    #[error("i/o error reading model: {0}")]
    Io(#[from] std::io::Error),
    #[error("malformed model json: {0}")]
    Json(#[from] serde_json::Error),
    #[error("model error: {0}")]
    Model(String),
    #[error("element has {got} coefficients, basis has {expected}")]
    Length { got: usize, expected: usize },
    #[error("element is not homogeneous")]
    Inhomogeneous,
    #[error("expected a homogeneous element of degree {expected}")]
    WrongDegree { expected: i64 },
    #[error("ad_x is not nilpotent within bound {bound}: ad_x^{bound} != 0")]
    NotNilpotent { bound: usize },
    #[error("input element is not Maurer-Cartan (residual nonzero)")]
    NotMaurerCartan,
}

/// Element written over the basis of a [`FiniteDgl`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DglElement {
    pub coeffs: Vec<Rat>,
}

impl DglElement {
    pub fn zero(dim: usize) -> Self {
        DglElement {
            coeffs: vec![Rat::zero(); dim],
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn add(&self, other: &DglElement) -> DglElement {
        DglElement {
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, other: &DglElement) -> DglElement {
        DglElement {
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    pub fn scale(&self, f: &Rat) -> DglElement {
        DglElement {
            coeffs: self.coeffs.iter().map(|a| a * f).collect(),
        }
    }
}

/// One violated axiom instance, by basis indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    BracketDegree { i: usize, j: usize, k: usize },
    DifferentialDegree { i: usize, k: usize },
    Antisymmetry { i: usize, j: usize },
    Jacobi { i: usize, j: usize, k: usize },
    Leibniz { i: usize, j: usize },
    DifferentialSquared { i: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::BracketDegree { i, j, k } => {
                write!(f, "bracket degree: [e{i}, e{j}] hits e{k} of wrong degree")
            }
            Violation::DifferentialDegree { i, k } => {
                write!(f, "differential degree: d(e{i}) hits e{k} of wrong degree")
            }
            Violation::Antisymmetry { i, j } => {
                write!(f, "graded antisymmetry fails on (e{i}, e{j})")
            }
            Violation::Jacobi { i, j, k } => {
                write!(f, "graded Jacobi fails on (e{i}, e{j}, e{k})")
            }
            Violation::Leibniz { i, j } => write!(f, "Leibniz fails on (e{i}, e{j})"),
            Violation::DifferentialSquared { i } => write!(f, "d^2(e{i}) != 0"),
        }
    }
}

/// Full axiom report; valid iff no violations.
#[derive(Debug, Clone, Default)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Comparison of the closed gauge formula with the flow recursion.
#[derive(Debug, Clone)]
pub struct FlowComparison {
    pub via_gauge: DglElement,
    pub via_flow: DglElement,
}

impl FlowComparison {
    pub fn agrees(&self) -> bool {
        self.via_gauge == self.via_flow
    }
}

#[derive(Debug, Serialize, Deserialize)]
struct ModelFile {
    basis: Vec<BasisEntry>,
    brackets: Vec<BracketEntry>,
    differential: Vec<DiffEntry>,
}

#[derive(Debug, Serialize, Deserialize)]
struct BasisEntry {
    name: String,
    degree: i64,
}

#[derive(Debug, Serialize, Deserialize)]
struct BracketEntry {
    i: usize,
    j: usize,
    k: usize,
    coeff: String,
}

#[derive(Debug, Serialize, Deserialize)]
struct DiffEntry {
    i: usize,
    k: usize,
    coeff: String,
}

/// A finite graded basis with bracket structure constants and differential.
#[derive(Debug, Clone)]
pub struct FiniteDgl {
    names: Vec<String>,
    degrees: Vec<i64>,
    // [e_i, e_j] = sum over stored (k, c)
    brackets: BTreeMap<(usize, usize), Vec<(usize, Rat)>>,
    // d e_i = sum over stored (k, c)
    differential: Vec<Vec<(usize, Rat)>>,
}

impl FiniteDgl {
    /// Assemble from parts. Only well-formedness is enforced here (index
    /// bounds, unique names, no duplicate constants); the axioms are the
    /// business of [`FiniteDgl::validate`].
    pub fn from_parts(
        basis: Vec<(String, i64)>,
        brackets: Vec<(usize, usize, usize, Rat)>,
        differential: Vec<(usize, usize, Rat)>,
    ) -> Result<Self, DglError> {
        let dim = basis.len();
        if dim == 0 {
            return Err(DglError::Model("empty basis".into()));
        }
        let mut names = Vec::with_capacity(dim);
        let mut degrees = Vec::with_capacity(dim);
        for (name, degree) in basis {
            if name.is_empty() {
                return Err(DglError::Model("empty basis name".into()));
            }
            if names.contains(&name) {
                return Err(DglError::Model(format!("duplicate basis name `{name}`")));
            }
            names.push(name);
            degrees.push(degree);
        }
        let mut bmap: BTreeMap<(usize, usize), Vec<(usize, Rat)>> = BTreeMap::new();
        for (i, j, k, c) in brackets {
            if i >= dim || j >= dim || k >= dim {
                return Err(DglError::Model(format!(
                    "bracket entry ({i},{j},{k}) out of range for dimension {dim}"
                )));
            }
            let slot = bmap.entry((i, j)).or_default();
            if slot.iter().any(|(k2, _)| *k2 == k) {
                return Err(DglError::Model(format!(
                    "duplicate bracket entry ({i},{j},{k})"
                )));
            }
            if !c.is_zero() {
                slot.push((k, c));
            }
        }
        bmap.retain(|_, v| !v.is_empty());
        let mut dmat: Vec<Vec<(usize, Rat)>> = vec![Vec::new(); dim];
        for (i, k, c) in differential {
            if i >= dim || k >= dim {
                return Err(DglError::Model(format!(
                    "differential entry ({i},{k}) out of range for dimension {dim}"
                )));
            }
            if dmat[i].iter().any(|(k2, _)| *k2 == k) {
                return Err(DglError::Model(format!(
                    "duplicate differential entry ({i},{k})"
                )));
            }
            if !c.is_zero() {
                dmat[i].push((k, c));
            }
        }
        Ok(FiniteDgl {
            names,
            degrees,
            brackets: bmap,
            differential: dmat,
        })
    }

    pub fn from_json_str(s: &str) -> Result<Self, DglError> {
        let file: ModelFile = serde_json::from_str(s)?;
        let basis = file.basis.into_iter().map(|b| (b.name, b.degree)).collect();
        let mut brackets = Vec::new();
        for e in file.brackets {
            let c = parse_rat(&e.coeff)
                .map_err(|err| DglError::Model(format!("bracket coeff: {err}")))?;
            brackets.push((e.i, e.j, e.k, c));
        }
        let mut differential = Vec::new();
        for e in file.differential {
            let c = parse_rat(&e.coeff)
                .map_err(|err| DglError::Model(format!("differential coeff: {err}")))?;
            differential.push((e.i, e.k, c));
        }
        Self::from_parts(basis, brackets, differential)
    }

    pub fn from_path(path: &Path) -> Result<Self, DglError> {
        let text = std::fs::read_to_string(path)?;
        Self::from_json_str(&text)
    }

    pub fn dim(&self) -> usize {
        self.names.len()
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn degree(&self, i: usize) -> i64 {
        self.degrees[i]
    }

    pub fn basis_index(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    /// The basis element `e_i` as an element.
    pub fn basis_element(&self, i: usize) -> DglElement {
        let mut e = DglElement::zero(self.dim());
        e.coeffs[i] = Rat::one();
        e
    }

    fn check_len(&self, e: &DglElement) -> Result<(), DglError> {
        if e.coeffs.len() != self.dim() {
            return Err(DglError::Length {
                got: e.coeffs.len(),
                expected: self.dim(),
            });
        }
        Ok(())
    }

    /// Homogeneous degree of an element, `None` for the zero element.
    pub fn element_degree(&self, e: &DglElement) -> Result<Option<i64>, DglError> {
        self.check_len(e)?;
        let mut deg = None;
        for (i, c) in e.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            match deg {
                None => deg = Some(self.degrees[i]),
                Some(d) if d == self.degrees[i] => {}
                Some(_) => return Err(DglError::Inhomogeneous),
            }
        }
        Ok(deg)
    }

    fn bracket_basis(&self, i: usize, j: usize) -> DglElement {
        let mut out = DglElement::zero(self.dim());
        if let Some(terms) = self.brackets.get(&(i, j)) {
            for (k, c) in terms {
                out.coeffs[*k] += c;
            }
        }
        out
    }

    /// Bilinear bracket of elements.
    pub fn bracket(&self, u: &DglElement, v: &DglElement) -> Result<DglElement, DglError> {
        self.check_len(u)?;
        self.check_len(v)?;
        let mut out = DglElement::zero(self.dim());
        for (i, ci) in u.coeffs.iter().enumerate() {
            if ci.is_zero() {
                continue;
            }
            for (j, cj) in v.coeffs.iter().enumerate() {
                if cj.is_zero() {
                    continue;
                }
                if let Some(terms) = self.brackets.get(&(i, j)) {
                    let f = ci * cj;
                    for (k, c) in terms {
                        out.coeffs[*k] += c * &f;
                    }
                }
            }
        }
        Ok(out)
    }

    /// Apply the differential.
    pub fn differential(&self, u: &DglElement) -> Result<DglElement, DglError> {
        self.check_len(u)?;
        let mut out = DglElement::zero(self.dim());
        for (i, ci) in u.coeffs.iter().enumerate() {
            if ci.is_zero() {
                continue;
            }
            for (k, c) in &self.differential[i] {
                out.coeffs[*k] += c * ci;
            }
        }
        Ok(out)
    }

    /// Check every axiom on every basis tuple; violations are report
    /// content, not errors.
    pub fn validate(&self) -> ValidationReport {
        let dim = self.dim();
        let mut report = ValidationReport::default();

        for (&(i, j), terms) in &self.brackets {
            for (k, _) in terms {
                if self.degrees[*k] != self.degrees[i] + self.degrees[j] {
                    report
                        .violations
                        .push(Violation::BracketDegree { i, j, k: *k });
                }
            }
        }
        for (i, terms) in self.differential.iter().enumerate() {
            for (k, _) in terms {
                if self.degrees[*k] != self.degrees[i] - 1 {
                    report
                        .violations
                        .push(Violation::DifferentialDegree { i, k: *k });
                }
            }
        }
        // [e_i, e_j] + (-1)^{|i||j|} [e_j, e_i] = 0
        for i in 0..dim {
            for j in i..dim {
                let fwd = self.bracket_basis(i, j);
                let bwd = self.bracket_basis(j, i);
                let sign_even = (self.degrees[i] * self.degrees[j]).rem_euclid(2) == 0;
                let sum = if sign_even {
                    fwd.add(&bwd)
                } else {
                    fwd.sub(&bwd)
                };
                if !sum.is_zero() {
                    report.violations.push(Violation::Antisymmetry { i, j });
                }
            }
        }
        // [e_i, [e_j, e_k]] = [[e_i, e_j], e_k] + (-1)^{|i||j|} [e_j, [e_i, e_k]]
        for i in 0..dim {
            let ei = self.basis_element(i);
            for j in 0..dim {
                let ej = self.basis_element(j);
                let eij = self.bracket_basis(i, j);
                let sign_even = (self.degrees[i] * self.degrees[j]).rem_euclid(2) == 0;
                for k in 0..dim {
                    let ek = self.basis_element(k);
                    let lhs = self.bracket(&ei, &self.bracket_basis(j, k)).unwrap();
                    let r1 = self.bracket(&eij, &ek).unwrap();
                    let r2 = self.bracket(&ej, &self.bracket_basis(i, k)).unwrap();
                    let rhs = if sign_even { r1.add(&r2) } else { r1.sub(&r2) };
                    if lhs != rhs {
                        report.violations.push(Violation::Jacobi { i, j, k });
                    }
                }
            }
        }
        // d[e_i, e_j] = [d e_i, e_j] + (-1)^{|i|} [e_i, d e_j]
        for i in 0..dim {
            let ei = self.basis_element(i);
            let di = self.differential(&ei).unwrap();
            let sign_even = self.degrees[i].rem_euclid(2) == 0;
            for j in 0..dim {
                let ej = self.basis_element(j);
                let dj = self.differential(&ej).unwrap();
                let lhs = self.differential(&self.bracket_basis(i, j)).unwrap();
                let r1 = self.bracket(&di, &ej).unwrap();
                let r2 = self.bracket(&ei, &dj).unwrap();
                let rhs = if sign_even { r1.add(&r2) } else { r1.sub(&r2) };
                if lhs != rhs {
                    report.violations.push(Violation::Leibniz { i, j });
                }
            }
        }
        for i in 0..dim {
            let ei = self.basis_element(i);
            let dd = self.differential(&self.differential(&ei).unwrap()).unwrap();
            if !dd.is_zero() {
                report.violations.push(Violation::DifferentialSquared { i });
            }
        }
        report
    }

    /// Maurer-Cartan residual `d a + (1/2)[a, a]` of a degree -1 element.
    pub fn mc_residual(&self, a: &DglElement) -> Result<DglElement, DglError> {
        match self.element_degree(a)? {
            None | Some(-1) => {}
            Some(_) => return Err(DglError::WrongDegree { expected: -1 }),
        }
        let da = self.differential(a)?;
        let sq = self.bracket(a, a)?;
        Ok(da.add(&sq.scale(&Rat::new(BigInt::one(), BigInt::from(2)))))
    }

    /// Smallest `m <= bound` with `ad_x^m = 0` as an operator on the whole
    /// algebra, found by iterating the adjoint on basis vectors.
    pub fn ad_nilpotency_index(&self, x: &DglElement, bound: usize) -> Result<usize, DglError> {
        self.check_len(x)?;
        // columns of ad_x^m, starting at m = 0
        let mut columns: Vec<DglElement> = (0..self.dim()).map(|i| self.basis_element(i)).collect();
        for m in 0..=bound {
            if columns.iter().all(|c| c.is_zero()) {
                return Ok(m);
            }
            for c in columns.iter_mut() {
                *c = self.bracket(x, c)?;
            }
        }
        Err(DglError::NotNilpotent { bound })
    }

    fn check_gauge_inputs(
        &self,
        x: &DglElement,
        a: &DglElement,
        bound: usize,
    ) -> Result<usize, DglError> {
        match self.element_degree(x)? {
            None | Some(0) => {}
            Some(_) => return Err(DglError::WrongDegree { expected: 0 }),
        }
        match self.element_degree(a)? {
            None | Some(-1) => {}
            Some(_) => return Err(DglError::WrongDegree { expected: -1 }),
        }
        self.ad_nilpotency_index(x, bound)
    }

    /// The gauge action of `x` on `a`, as the closed sum
    /// `sum_i (-1)^i ad_x^i(a)/i! + sum_i (-1)^i ad_x^i(dx)/(i+1)!`.
    pub fn gauge(
        &self,
        x: &DglElement,
        a: &DglElement,
        bound: usize,
    ) -> Result<DglElement, DglError> {
        let m = self.check_gauge_inputs(x, a, bound)?;
        let mut acc = DglElement::zero(self.dim());
        let mut term = a.clone();
        for i in 0..m.max(1) {
            let coeff = Rat::new(
                if i % 2 == 0 {
                    BigInt::one()
                } else {
                    -BigInt::one()
                },
                factorial(i),
            );
            acc = acc.add(&term.scale(&coeff));
            term = self.bracket(x, &term)?;
        }
        let mut term = self.differential(x)?;
        for i in 0..m.max(1) {
            let coeff = Rat::new(
                if i % 2 == 0 {
                    BigInt::one()
                } else {
                    -BigInt::one()
                },
                factorial(i + 1),
            );
            acc = acc.add(&term.scale(&coeff));
            term = self.bracket(x, &term)?;
        }
        Ok(acc)
    }

    /// Solve `u' = dx - ad_x(u)`, `u(0) = a` exactly as a polynomial in `t`
    /// via `u_1 = dx - ad_x(a)`, `u_{m+1} = -ad_x(u_m)/(m+1)`, and evaluate
    /// at `t = 1`.
    pub fn flow_transport(
        &self,
        x: &DglElement,
        a: &DglElement,
        bound: usize,
    ) -> Result<DglElement, DglError> {
        self.check_gauge_inputs(x, a, bound)?;
        let mut total = a.clone();
        let mut u = self.differential(x)?.sub(&self.bracket(x, a)?);
        let mut m: usize = 1;
        while !u.is_zero() {
            total = total.add(&u);
            let next = self
                .bracket(x, &u)?
                .scale(&Rat::new(-BigInt::one(), BigInt::from(m + 1)));
            u = next;
            m += 1;
        }
        Ok(total)
    }

    /// Run both routes and report.
    pub fn flow_check(
        &self,
        x: &DglElement,
        a: &DglElement,
        bound: usize,
    ) -> Result<FlowComparison, DglError> {
        Ok(FlowComparison {
            via_gauge: self.gauge(x, a, bound)?,
            via_flow: self.flow_transport(x, a, bound)?,
        })
    }

    /// For Maurer-Cartan `a`: is `x * a` again Maurer-Cartan?
    pub fn gauge_preserves_mc(
        &self,
        x: &DglElement,
        a: &DglElement,
        bound: usize,
    ) -> Result<bool, DglError> {
        if !self.mc_residual(a)?.is_zero() {
            return Err(DglError::NotMaurerCartan);
        }
        let moved = self.gauge(x, a, bound)?;
        Ok(self.mc_residual(&moved)?.is_zero())
    }

    /// Render an element with basis names, e.g. `"a - 1/2 b"`.
    pub fn format_element(&self, e: &DglElement) -> String {
        let mut parts = Vec::new();
        for (i, c) in e.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            parts.push(format!("{}*{}", rat_string(c), self.names[i]));
        }
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" + ")
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{frac, rat};

    /// The three-dimensional model with `[x, a] = b` and zero differential.
    fn l1() -> FiniteDgl {
        FiniteDgl::from_parts(
            vec![("x".into(), 0), ("a".into(), -1), ("b".into(), -1)],
            vec![(0, 1, 2, rat(1)), (1, 0, 2, rat(-1))],
            vec![],
        )
        .unwrap()
    }

    #[test]
    fn l1_is_valid() {
        assert!(l1().validate().is_valid());
    }

    #[test]
    fn degree_violation_detected() {
        // adding [a, a] = b forces |b| = -2, which fails
        let l = FiniteDgl::from_parts(
            vec![("x".into(), 0), ("a".into(), -1), ("b".into(), -1)],
            vec![(0, 1, 2, rat(1)), (1, 0, 2, rat(-1)), (1, 1, 2, rat(1))],
            vec![],
        )
        .unwrap();
        let report = l.validate();
        assert!(report
            .violations
            .iter()
            .any(|v| matches!(v, Violation::BracketDegree { i: 1, j: 1, .. })));
    }

    #[test]
    fn antisymmetry_violation_detected() {
        let l = FiniteDgl::from_parts(
            vec![("x".into(), 0), ("a".into(), -1), ("b".into(), -1)],
            vec![(0, 1, 2, rat(1)), (1, 0, 2, rat(1))],
            vec![],
        )
        .unwrap();
        let report = l.validate();
        assert!(report
            .violations
            .iter()
            .any(|v| matches!(v, Violation::Antisymmetry { i: 0, j: 1 })));
    }

    #[test]
    fn dsq_violation_detected() {
        // d x = a, d a = b is degree-consistent but d^2 x = b != 0
        let l = FiniteDgl::from_parts(
            vec![("x".into(), 0), ("a".into(), -1), ("b".into(), -2)],
            vec![],
            vec![(0, 1, rat(1)), (1, 2, rat(1))],
        )
        .unwrap();
        let report = l.validate();
        assert!(report
            .violations
            .iter()
            .any(|v| matches!(v, Violation::DifferentialSquared { i: 0 })));
    }

    #[test]
    fn abelian_with_differential_is_valid() {
        let l = FiniteDgl::from_parts(
            vec![("x".into(), 0), ("a".into(), -1)],
            vec![],
            vec![(0, 1, rat(1))],
        )
        .unwrap();
        assert!(l.validate().is_valid());
    }

    #[test]
    fn mc_residual_examples() {
        let l = l1();
        let zero = DglElement::zero(3);
        assert!(l.mc_residual(&zero).unwrap().is_zero());
        let a = l.basis_element(1);
        assert!(l.mc_residual(&a).unwrap().is_zero());
        // with d a = b the residual becomes b
        let l2 = FiniteDgl::from_parts(
            vec![("x".into(), 0), ("a".into(), -1), ("b".into(), -2)],
            vec![],
            vec![(1, 2, rat(1))],
        )
        .unwrap();
        let res = l2.mc_residual(&l2.basis_element(1)).unwrap();
        assert_eq!(res.coeffs[2], rat(1));
    }

    #[test]
    fn gauge_in_l1() {
        let l = l1();
        let x = l.basis_element(0);
        let a = l.basis_element(1);
        // central x with dx = 0 fixes a
        let central = DglElement::zero(3);
        assert_eq!(l.gauge(&central, &a, 16).unwrap(), a);
        // ad_x(a) = b, ad_x(b) = 0: the flow of x sends a to a - b
        let moved = l.gauge(&x, &a, 16).unwrap();
        assert_eq!(moved.coeffs[1], rat(1));
        assert_eq!(moved.coeffs[2], rat(-1));
        // linearity of ad in x
        let moved2 = l.gauge(&x.scale(&rat(2)), &a, 16).unwrap();
        assert_eq!(moved2.coeffs[2], rat(-2));
    }

    #[test]
    fn flow_equals_gauge_in_l1() {
        let l = l1();
        let x = l.basis_element(0);
        let a = l.basis_element(1);
        let cmp = l.flow_check(&x, &a, 16).unwrap();
        assert!(cmp.agrees());
        // u(t) = a - t b, so u(1) = a - b
        assert_eq!(cmp.via_flow.coeffs[2], rat(-1));
    }

    #[test]
    fn gauge_preserves_mc_in_l1() {
        let l = l1();
        let x = l.basis_element(0);
        let a = l.basis_element(1);
        assert!(l.gauge_preserves_mc(&x, &a, 16).unwrap());
        let zero = DglElement::zero(3);
        assert!(l.gauge_preserves_mc(&zero, &a, 16).unwrap());
    }

    #[test]
    fn nilpotency_bound_errors() {
        // take [x, a] = a (degree 0 on itself): ad_x is not nilpotent
        let l = FiniteDgl::from_parts(
            vec![("x".into(), 0), ("a".into(), 0)],
            vec![(0, 1, 1, rat(1)), (1, 0, 1, rat(-1))],
            vec![],
        )
        .unwrap();
        let x = l.basis_element(0);
        assert!(matches!(
            l.ad_nilpotency_index(&x, 8),
            Err(DglError::NotNilpotent { bound: 8 })
        ));
    }

    #[test]
    fn element_formatting() {
        let l = l1();
        let mut e = DglElement::zero(3);
        e.coeffs[1] = rat(1);
        e.coeffs[2] = frac(-1, 2);
        assert_eq!(l.format_element(&e), "1*a + -1/2*b");
        assert_eq!(l.format_element(&DglElement::zero(3)), "0");
    }

    #[test]
    fn loader_rejects_malformed() {
        let bad_index = r#"{"basis":[{"name":"x","degree":0}],
            "brackets":[{"i":0,"j":5,"k":0,"coeff":"1"}],"differential":[]}"#;
        assert!(FiniteDgl::from_json_str(bad_index).is_err());
        let bad_coeff = r#"{"basis":[{"name":"x","degree":0}],
            "brackets":[],"differential":[{"i":0,"k":0,"coeff":"1/0"}]}"#;
        assert!(FiniteDgl::from_json_str(bad_coeff).is_err());
        let dup = r#"{"basis":[{"name":"x","degree":0},{"name":"y","degree":0}],
            "brackets":[{"i":0,"j":1,"k":0,"coeff":"1"},{"i":0,"j":1,"k":0,"coeff":"2"}],
            "differential":[]}"#;
        assert!(FiniteDgl::from_json_str(dup).is_err());
    }
}
