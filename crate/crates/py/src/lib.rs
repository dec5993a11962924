//! Python bindings. Rationals cross the boundary as strings such as `"-1/2"`,
//! which `fractions.Fraction` parses directly.

use std::sync::Arc;

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use ratmodel::burnside::{BurnsideElement, BurnsideRing};
use ratmodel::dgmod::{hom_complex, homology, tensor, DGModule};
use ratmodel::exactq::{format_rational, parse_rational};
use ratmodel::json::{category_from_str, complex_from_str, complex_to_string, group_spec};
use ratmodel::permgrp::{cycle_string, group_from_spec, GroupRef};
use ratmodel::ringoid::{build_ea, formality_zigzag, is_ring_iso_to_group_algebra, MonoidalDGCategory};
use ratmodel::ringoidmod::{morita_roundtrip_check, morita_unit_check};
use ratmodel::skew::dihedral_iso_check;
use ratmodel::Rational;

const POWER_BOUND: usize = 1 << 20;

fn err(e: ratmodel::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn strings(xs: &[Rational]) -> Vec<String> {
    xs.iter().map(format_rational).collect()
}

fn parse_all(xs: &[String]) -> PyResult<Vec<Rational>> {
    xs.iter().map(|s| parse_rational(s).map_err(err)).collect()
}

/// A finite permutation group, from a name such as `"S3"` or `"C2xC2"`.
#[pyclass(frozen, name = "Group")]
struct PyGroup {
    inner: GroupRef,
}

#[pymethods]
impl PyGroup {
    #[new]
    fn new(spec: &str) -> PyResult<Self> {
        Ok(Self { inner: Arc::new(group_from_spec(spec).map_err(err)?) })
    }

    fn order(&self) -> usize {
        self.inner.order()
    }

    /// Elements in index order, as cycle strings; index 0 is the identity.
    fn elements(&self) -> Vec<String> {
        self.inner.elements().iter().map(|p| cycle_string(p)).collect()
    }

    fn mul(&self, a: usize, b: usize) -> PyResult<usize> {
        let n = self.inner.order();
        if a >= n || b >= n {
            return Err(PyValueError::new_err("element index out of range"));
        }
        Ok(self.inner.mul(a, b))
    }

    fn spec(&self) -> String {
        group_spec(&self.inner)
    }

    fn __repr__(&self) -> String {
        format!("Group({:?}, order={})", group_spec(&self.inner), self.inner.order())
    }
}

/// The rational Burnside ring of a group, in the basis of transitive G-sets.
#[pyclass(frozen, name = "BurnsideRing")]
struct PyBurnsideRing {
    ring: BurnsideRing,
}

impl PyBurnsideRing {
    fn element(&self, xs: &[String]) -> PyResult<BurnsideElement> {
        BurnsideElement::new(self.ring.group().clone(), parse_all(xs)?).map_err(err)
    }
}

#[pymethods]
impl PyBurnsideRing {
    #[new]
    fn new(group: &PyGroup) -> Self {
        Self { ring: BurnsideRing::new(group.inner.clone()) }
    }

    fn rank(&self) -> usize {
        self.ring.rank()
    }

    fn class_labels(&self) -> Vec<String> {
        self.ring.table().class_labels()
    }

    /// Row `h`, column `k` is `|(G/H)^K|`.
    fn marks(&self) -> Vec<Vec<String>> {
        self.ring.table().matrix().to_strings()
    }

    fn idempotents(&self) -> Vec<Vec<String>> {
        self.ring.idempotent_basis().iter().map(|e| strings(e.coefficients())).collect()
    }

    fn multiply(&self, x: Vec<String>, y: Vec<String>) -> PyResult<Vec<String>> {
        let z = self.ring.multiply(&self.element(&x)?, &self.element(&y)?).map_err(err)?;
        Ok(strings(z.coefficients()))
    }

    fn marks_of(&self, x: Vec<String>) -> PyResult<Vec<String>> {
        Ok(strings(self.ring.marks(&self.element(&x)?).map_err(err)?.values()))
    }

    /// Whether the unit splits into the orthogonal idempotents with all checks passing.
    fn split_unit_passes(&self) -> bool {
        self.ring.split_unit_report().all_pass()
    }

    /// `(G/H)^i` as a list of (class index, multiplicity).
    fn power_decomposition(&self, subgroup: &str, i: usize) -> PyResult<Vec<(usize, usize)>> {
        let h = self.ring.group().subgroup_from_spec(subgroup).map_err(err)?;
        self.ring.power_decomposition(&h, i, POWER_BOUND).map_err(err)
    }

    /// Restriction to a subgroup, in the Burnside ring of the subgroup.
    fn restrict(&self, x: Vec<String>, subgroup: &str) -> PyResult<Vec<String>> {
        let h = self.ring.group().subgroup_from_spec(subgroup).map_err(err)?;
        let res = self.ring.restriction(&h);
        let y = self.ring.restrict(&self.element(&x)?, &res).map_err(err)?;
        Ok(strings(y.coefficients()))
    }
}

/// A bounded chain complex of QG-modules.
#[pyclass(frozen, name = "Complex")]
struct PyComplex {
    inner: DGModule,
}

#[pymethods]
impl PyComplex {
    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        Ok(Self { inner: complex_from_str(text).map_err(err)? })
    }

    #[staticmethod]
    fn regular(group: &PyGroup) -> Self {
        Self { inner: DGModule::regular(group.inner.clone()) }
    }

    #[staticmethod]
    fn unit(group: &PyGroup) -> Self {
        Self { inner: DGModule::unit(group.inner.clone()) }
    }

    fn to_json(&self) -> String {
        complex_to_string(&self.inner)
    }

    fn lo(&self) -> i32 {
        self.inner.lo()
    }

    fn dims(&self) -> Vec<usize> {
        self.inner.dims().to_vec()
    }

    /// Nonzero homology as (degree, dimension) pairs.
    fn homology(&self) -> Vec<(i32, usize)> {
        homology(&self.inner).rep.graded_dims()
    }

    fn tensor(&self, other: &PyComplex) -> PyResult<PyComplex> {
        Ok(Self { inner: tensor(&self.inner, &other.inner).map_err(err)? })
    }

    fn hom(&self, other: &PyComplex) -> PyResult<PyComplex> {
        Ok(Self { inner: hom_complex(&self.inner, &other.inner).map_err(err)? })
    }

    fn __repr__(&self) -> String {
        format!("Complex(lo={}, dims={:?})", self.inner.lo(), self.inner.dims())
    }
}

/// The category of tensor powers `QW^{⊗i}`, `0 ≤ i ≤ max_power`.
#[pyclass(frozen, name = "EaCategory")]
struct PyEaCategory {
    inner: MonoidalDGCategory,
}

#[pymethods]
impl PyEaCategory {
    #[new]
    fn new(weyl: &PyGroup, max_power: usize) -> PyResult<Self> {
        Ok(Self { inner: build_ea(weyl.inner.clone(), max_power).map_err(err)? })
    }

    fn objects(&self) -> Vec<String> {
        self.inner.category().objects().to_vec()
    }

    fn hom_dims(&self) -> Vec<Vec<usize>> {
        let c = self.inner.category();
        let n = c.object_count();
        (0..n).map(|a| (0..n).map(|b| c.hom_dim(a, b)).collect()).collect()
    }

    /// Whether `End(QW)` is identified with `QW` through the inverse assignment.
    fn ring_iso_holds(&self) -> PyResult<bool> {
        let map = self.inner.inverse_assignment().map_err(err)?;
        Ok(is_ring_iso_to_group_algebra(&self.inner, &map))
    }

    fn validate(&self) -> bool {
        self.inner.category().validate().is_ok() && self.inner.check_monoidal().is_ok()
    }

    /// Counit well-defined, equivariant and invertible for the complex `x`.
    fn morita_roundtrip(&self, x: &PyComplex) -> PyResult<bool> {
        Ok(morita_roundtrip_check(&self.inner, &x.inner).map_err(err)?.passes())
    }

    fn morita_unit(&self, object: usize) -> PyResult<bool> {
        morita_unit_check(&self.inner, object).map_err(err)
    }
}

/// Formality verdict of a dg category given as JSON text.
#[pyfunction]
fn is_formal(category_json: &str) -> PyResult<bool> {
    let c = category_from_str(category_json).map_err(err)?;
    Ok(formality_zigzag(&c).map_err(err)?.verdict)
}

/// Verifies `QC_n # C2 ≅ QD_2n`; returns (verified, dimension).
#[pyfunction]
fn skew_dihedral(n: usize) -> PyResult<(bool, usize)> {
    let r = dihedral_iso_check(n).map_err(err)?;
    Ok((r.verified, r.dim))
}

#[pymodule]
fn ratmodel_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyGroup>()?;
    m.add_class::<PyBurnsideRing>()?;
    m.add_class::<PyComplex>()?;
    m.add_class::<PyEaCategory>()?;
    m.add_function(wrap_pyfunction!(is_formal, m)?)?;
    m.add_function(wrap_pyfunction!(skew_dihedral, m)?)?;
    Ok(())
}
