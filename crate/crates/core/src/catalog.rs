//! Named families of quadratic functions known (or conjectured) to be bent,
//! each behind the [`BentFamily`] trait and looked up by name in a
//! [`FamilyRegistry`].
//!
//! Every family reduces to a plain trace-term list, so the rest of the crate
//! never needs to know which family produced a function.  Validity predicates
//! name the violated condition instead of silently building something that
//! cannot be bent, and closed-form ε predictions are advisory: the empirical
//! classifier in `quadform` stays the ground truth and any disagreement is
//! surfaced, never silently absorbed.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::field::{FieldElement, FieldSpec};
use crate::quadform::QFunction;

/// What a family can say in advance about the ε of its even-dimension
/// members.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EpsilonPrediction {
    Known(i8),
    Unknown,
}

/// Parameter bag shared by all families; each family reads the fields it
/// documents and ignores the rest.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FamilyParams {
    pub c: Option<FieldElement>,
    pub u: Option<FieldElement>,
    pub j: Option<usize>,
    pub k: Option<usize>,
    pub s: Option<usize>,
    pub t: Option<u64>,
    pub coeffs: Option<Vec<FieldElement>>,
}

impl FamilyParams {
    pub fn c(mut self, c: FieldElement) -> Self {
        self.c = Some(c);
        self
    }

    pub fn u(mut self, u: FieldElement) -> Self {
        self.u = Some(u);
        self
    }

    pub fn j(mut self, j: usize) -> Self {
        self.j = Some(j);
        self
    }

    pub fn k(mut self, k: usize) -> Self {
        self.k = Some(k);
        self
    }

    pub fn s(mut self, s: usize) -> Self {
        self.s = Some(s);
        self
    }

    pub fn t(mut self, t: u64) -> Self {
        self.t = Some(t);
        self
    }

    pub fn coeffs(mut self, coeffs: Vec<FieldElement>) -> Self {
        self.coeffs = Some(coeffs);
        self
    }
}

/// A constructor-plus-predicates bundle for one function family.  Register
/// implementations in a [`FamilyRegistry`] to make them addressable by name
/// from configuration or the command line.
pub trait BentFamily {
    /// Registry key, e.g. `"planar-c"`.
    fn name(&self) -> &'static str;

    /// One-line human description of the function shape.
    fn summary(&self) -> &'static str;

    /// Checks the family's validity conditions, naming the violated one.
    fn validate(&self, field: &FieldSpec, params: &FamilyParams) -> Result<()>;

    /// Validates and constructs the trace-term function.
    fn build(&self, field: &FieldSpec, params: &FamilyParams) -> Result<QFunction>;

    /// Closed-form ε prediction for even m, where one is known.  The default
    /// refuses odd m and otherwise predicts nothing.
    fn epsilon_predict(
        &self,
        field: &FieldSpec,
        params: &FamilyParams,
    ) -> Result<EpsilonPrediction> {
        self.validate(field, params)?;
        require_even_m(self.name(), field)?;
        Ok(EpsilonPrediction::Unknown)
    }

    /// The planar map π (as field-valued terms) underlying the family, when
    /// the family is defined through one.
    fn planar_map(
        &self,
        field: &FieldSpec,
        params: &FamilyParams,
    ) -> Result<Option<Vec<(FieldElement, u64)>>> {
        self.validate(field, params)?;
        Ok(None)
    }

    /// Deterministic list of valid parameter points for sweeps at this
    /// field; empty when the family has no valid instance here.
    fn sweep_grid(&self, field: &FieldSpec) -> Vec<FamilyParams>;

    /// Normalized parameter map for reports (elements rendered as
    /// comma-joined coefficient vectors).
    fn canonical_params(
        &self,
        field: &FieldSpec,
        params: &FamilyParams,
    ) -> Result<BTreeMap<String, String>>;
}

/// Name-indexed store of family implementations.
pub struct FamilyRegistry {
    map: BTreeMap<&'static str, Box<dyn BentFamily>>,
}

impl FamilyRegistry {
    /// Registry with every built-in family.
    pub fn standard() -> Self {
        let mut reg = FamilyRegistry {
            map: BTreeMap::new(),
        };
        reg.register(Box::new(PlanarA));
        reg.register(Box::new(PlanarB));
        reg.register(Box::new(PlanarC));
        reg.register(Box::new(PlanarD));
        reg.register(Box::new(PlanarE));
        reg.register(Box::new(Gold));
        reg.register(Box::new(Kasami));
        reg.register(Box::new(Hg));
        reg.register(Box::new(PolyForm));
        reg
    }

    pub fn register(&mut self, family: Box<dyn BentFamily>) {
        self.map.insert(family.name(), family);
    }

    pub fn get(&self, name: &str) -> Result<&dyn BentFamily> {
        self.map
            .get(name)
            .map(|b| b.as_ref())
            .ok_or_else(|| Error::UnknownFamily(name.to_string()))
    }

    pub fn names(&self) -> Vec<&'static str> {
        self.map.keys().copied().collect()
    }

    pub fn iter(&self) -> impl Iterator<Item = &dyn BentFamily> {
        self.map.values().map(|b| b.as_ref())
    }
}

// ---------------------------------------------------------------------------
// shared helpers

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// p^e with overflow detection.
fn pexp(p: u64, e: usize) -> Result<u64> {
    let mut acc: u64 = 1;
    for _ in 0..e {
        acc = acc.checked_mul(p).ok_or(Error::OrderOverflow)?;
    }
    Ok(acc)
}

fn invalid(family: &'static str, condition: impl Into<String>) -> Error {
    Error::InvalidFamilySpec {
        family,
        condition: condition.into(),
    }
}

fn require_even_m(family: &'static str, field: &FieldSpec) -> Result<()> {
    if field.m() % 2 != 0 {
        return Err(invalid(
            family,
            "epsilon prediction is defined only for even m",
        ));
    }
    Ok(())
}

/// c, defaulting to 1, rejected if zero.
fn c_or_one(family: &'static str, field: &FieldSpec, params: &FamilyParams) -> Result<FieldElement> {
    let c = params.c.clone().unwrap_or_else(|| field.one());
    check_member(family, field, &c, "c")?;
    if c.is_zero() {
        return Err(invalid(family, "c must be nonzero"));
    }
    Ok(c)
}

fn check_member(
    family: &'static str,
    field: &FieldSpec,
    e: &FieldElement,
    what: &str,
) -> Result<()> {
    if e.coeffs().len() != field.m() || e.coeffs().iter().any(|&x| x >= field.p()) {
        return Err(invalid(
            family,
            format!("{what} is not an element of this field"),
        ));
    }
    Ok(())
}

fn render_elem(e: &FieldElement) -> String {
    e.coeffs()
        .iter()
        .map(u64::to_string)
        .collect::<Vec<_>>()
        .join(",")
}

/// Is u a generator of the multiplicative group?
fn is_primitive(field: &FieldSpec, u: &FieldElement) -> bool {
    match field.discrete_log(u) {
        Ok(t) => gcd(t, field.order() - 1) == 1,
        Err(_) => false,
    }
}

/// ε for the pure power families on even m: the extension-field quadratic
/// character of c times a sign that depends only on p and m.
fn power_epsilon(field: &FieldSpec, c: &FieldElement) -> i8 {
    let half = (field.p() - 1) / 2;
    let exponent = half * half * (field.m() as u64 / 2) + 1;
    let sign: i8 = if exponent % 2 == 0 { 1 } else { -1 };
    field.ext_quadratic_character(c) * sign
}

// ---------------------------------------------------------------------------
// free predicates and builders

/// Bentness criterion for the Gold-type function Tr(c x^{p^j+1}) with
/// t = log_g(c): bent iff p^{gcd(2j,m)} − 1 does not divide
/// (p^m − 1)/2 − t(p^j − 1).
pub fn gold_is_bent(p: u64, m: usize, j: usize, t: u64) -> bool {
    let g = gcd(2 * j as u64, m as u64) as u32;
    let d = (p as i128).pow(g) - 1;
    let residue = ((p as i128).pow(m as u32) - 1) / 2 - (t as i128) * ((p as i128).pow(j as u32) - 1);
    residue.rem_euclid(d) != 0
}

/// The Kasami coefficient condition c + c^{p^{m/2}} ≠ 0 (even m only).
pub fn kasami_valid(field: &FieldSpec, c: &FieldElement) -> Result<bool> {
    if field.m() % 2 != 0 {
        return Err(invalid("kasami", "m must be even"));
    }
    let half = pexp(field.p(), field.m() / 2)?;
    let conj = field.pow(c, half);
    Ok(!field.add(c, &conj).is_zero())
}

/// Builds the odd-m trace polynomial H(x) = Tr(Σ u_i x^{(p^{2i}+1)/2}).
///
/// The sign sequence b is assigned along the orbit of s — b_{(i·s) mod m} =
/// (−1)^i for i = 0..ℓ — and closed under the symmetry b_i = b_{m−i}; the
/// coefficients are u_0 = (p+1)/2 (the inverse of 2) and u_i = b_{2i mod m}.
/// An assignment conflict cannot arise for valid (s, m), but is checked and
/// raised rather than silently overwritten.
pub fn hg_build(field: &FieldSpec, s: usize) -> Result<Vec<(FieldElement, u64)>> {
    let (p, m) = (field.p(), field.m());
    if m % 2 == 0 || m < 3 {
        return Err(invalid("hg", "m must be odd and at least 3"));
    }
    let ell = (m - 1) / 2;
    if s < 1 || s > 2 * ell {
        return Err(invalid("hg", format!("s must lie in 1..={}", 2 * ell)));
    }
    if gcd(s as u64, m as u64) != 1 {
        return Err(invalid("hg", "s must be coprime to m"));
    }

    let mut b: Vec<Option<i64>> = vec![None; m];
    let assign = |b: &mut Vec<Option<i64>>, idx: usize, v: i64| -> Result<()> {
        match b[idx] {
            None => {
                b[idx] = Some(v);
                Ok(())
            }
            Some(w) if w == v => Ok(()),
            Some(w) => Err(Error::TheoryViolation(format!(
                "sign sequence conflict at index {idx}: {w} vs {v}"
            ))),
        }
    };
    for i in 0..=ell {
        let v = if i % 2 == 0 { 1 } else { -1 };
        assign(&mut b, i * s % m, v)?;
    }
    loop {
        let mut changed = false;
        for i in 1..m {
            match (b[i], b[m - i]) {
                (Some(v), None) => {
                    b[m - i] = Some(v);
                    changed = true;
                }
                (None, Some(v)) => {
                    b[i] = Some(v);
                    changed = true;
                }
                (Some(v), Some(w)) if v != w => {
                    return Err(Error::TheoryViolation(format!(
                        "sign symmetry conflict between indices {i} and {}",
                        m - i
                    )));
                }
                _ => {}
            }
        }
        if !changed {
            break;
        }
    }

    let mut terms = Vec::with_capacity(ell + 1);
    for i in 0..=ell {
        let coeff = if i == 0 {
            field.from_residue((p + 1) / 2)
        } else {
            let v = b[2 * i % m].ok_or_else(|| {
                Error::TheoryViolation(format!("sign sequence left index {} unassigned", 2 * i % m))
            })?;
            if v == 1 {
                field.one()
            } else {
                field.from_residue(p - 1)
            }
        };
        let e = (pexp(p, 2 * i)? + 1) / 2;
        terms.push((coeff, e));
    }
    Ok(terms)
}

/// The quadratic companion of [`hg_build`]: Q(x) = H(x²), i.e. the same
/// coefficients with every exponent doubled to p^{2i} + 1.
pub fn hg_q(field: &FieldSpec, s: usize) -> Result<QFunction> {
    let h = hg_build(field, s)?;
    let terms = h.into_iter().map(|(c, e)| (c, 2 * e)).collect();
    QFunction::from_terms(field.clone(), terms)
}

// ---------------------------------------------------------------------------
// the families

/// Q(x) = Tr(c x²).
pub struct PlanarA;

impl BentFamily for PlanarA {
    fn name(&self) -> &'static str {
        "planar-a"
    }

    fn summary(&self) -> &'static str {
        "trace of c times the squaring map: Tr(c x^2)"
    }

    fn validate(&self, field: &FieldSpec, params: &FamilyParams) -> Result<()> {
        c_or_one(self.name(), field, params).map(|_| ())
    }

    fn build(&self, field: &FieldSpec, params: &FamilyParams) -> Result<QFunction> {
        let c = c_or_one(self.name(), field, params)?;
        QFunction::from_terms(field.clone(), vec![(c, 2)])
    }

    fn epsilon_predict(
        &self,
        field: &FieldSpec,
        params: &FamilyParams,
    ) -> Result<EpsilonPrediction> {
        let c = c_or_one(self.name(), field, params)?;
        require_even_m(self.name(), field)?;
        Ok(EpsilonPrediction::Known(power_epsilon(field, &c)))
    }

    fn planar_map(
        &self,
        field: &FieldSpec,
        params: &FamilyParams,
    ) -> Result<Option<Vec<(FieldElement, u64)>>> {
        self.validate(field, params)?;
        Ok(Some(vec![(field.one(), 2)]))
    }

    fn sweep_grid(&self, field: &FieldSpec) -> Vec<FamilyParams> {
        vec![
            FamilyParams::default().c(field.one()),
            FamilyParams::default().c(field.generator().clone()),
        ]
    }

    fn canonical_params(
        &self,
        field: &FieldSpec,
        params: &FamilyParams,
    ) -> Result<BTreeMap<String, String>> {
        let c = c_or_one(self.name(), field, params)?;
        Ok(BTreeMap::from([("c".to_string(), render_elem(&c))]))
    }
}

/// Q(x) = Tr(c x^{p^k + 1}) with m/gcd(m,k) odd.
pub struct PlanarB;

impl PlanarB {
    fn resolve(&self, field: &FieldSpec, params: &FamilyParams) -> Result<(FieldElement, usize)> {
        let c = c_or_one("planar-b", field, params)?;
        let k = params
            .k
            .ok_or(Error::MissingParam {
                family: "planar-b",
                param: "k",
            })?;
        if k < 1 {
            return Err(invalid("planar-b", "k must be at least 1"));
        }
        let m = field.m() as u64;
        if m / gcd(m, k as u64) % 2 == 0 {
            return Err(invalid("planar-b", "m/gcd(m,k) must be odd"));
        }
        Ok((c, k))
    }
}

impl BentFamily for PlanarB {
    fn name(&self) -> &'static str {
        "planar-b"
    }

    fn summary(&self) -> &'static str {
        "trace of c times a power map: Tr(c x^{p^k+1}), m/gcd(m,k) odd"
    }

    fn validate(&self, field: &FieldSpec, params: &FamilyParams) -> Result<()> {
        self.resolve(field, params).map(|_| ())
    }

    fn build(&self, field: &FieldSpec, params: &FamilyParams) -> Result<QFunction> {
        let (c, k) = self.resolve(field, params)?;
        let e = pexp(field.p(), k)? + 1;
        QFunction::from_terms(field.clone(), vec![(c, e)])
    }

    fn epsilon_predict(
        &self,
        field: &FieldSpec,
        params: &FamilyParams,
    ) -> Result<EpsilonPrediction> {
        let (c, _) = self.resolve(field, params)?;
        require_even_m(self.name(), field)?;
        Ok(EpsilonPrediction::Known(power_epsilon(field, &c)))
    }

    fn planar_map(
        &self,
        field: &FieldSpec,
        params: &FamilyParams,
    ) -> Result<Option<Vec<(FieldElement, u64)>>> {
        let (_, k) = self.resolve(field, params)?;
        let e = pexp(field.p(), k)? + 1;
        Ok(Some(vec![(field.one(), e)]))
    }

    fn sweep_grid(&self, field: &FieldSpec) -> Vec<FamilyParams> {
        let mut grid = Vec::new();
        for c in [field.one(), field.generator().clone()] {
            for k in 1..=field.m() {
                let params = FamilyParams::default().c(c.clone()).k(k);
                if self.validate(field, &params).is_ok() {
                    grid.push(params);
                }
            }
        }
        grid
    }

    fn canonical_params(
        &self,
        field: &FieldSpec,
        params: &FamilyParams,
    ) -> Result<BTreeMap<String, String>> {
        let (c, k) = self.resolve(field, params)?;
        Ok(BTreeMap::from([
            ("c".to_string(), render_elem(&c)),
            ("k".to_string(), k.to_string()),
        ]))
    }
}

/// Q(x) = Tr(c(x^{10} − x^6 − x²)), characteristic 3, odd m.
pub struct PlanarC;

impl PlanarC {
    fn check(&self, field: &FieldSpec) -> Result<()> {
        if field.p() != 3 {
            return Err(invalid("planar-c", "p must be 3"));
        }
        if field.m() % 2 == 0 {
            return Err(invalid("planar-c", "m must be odd"));
        }
        Ok(())
    }
}

impl BentFamily for PlanarC {
    fn name(&self) -> &'static str {
        "planar-c"
    }

    fn summary(&self) -> &'static str {
        "trace of c times x^10 - x^6 - x^2 (p = 3, odd m)"
    }

    fn validate(&self, field: &FieldSpec, params: &FamilyParams) -> Result<()> {
        self.check(field)?;
        c_or_one(self.name(), field, params).map(|_| ())
    }

    fn build(&self, field: &FieldSpec, params: &FamilyParams) -> Result<QFunction> {
        self.check(field)?;
        let c = c_or_one(self.name(), field, params)?;
        let neg_c = field.neg(&c);
        QFunction::from_terms(
            field.clone(),
            vec![(c, 10), (neg_c.clone(), 6), (neg_c, 2)],
        )
    }

    fn planar_map(
        &self,
        field: &FieldSpec,
        params: &FamilyParams,
    ) -> Result<Option<Vec<(FieldElement, u64)>>> {
        self.validate(field, params)?;
        let one = field.one();
        let neg = field.neg(&one);
        Ok(Some(vec![(one, 10), (neg.clone(), 6), (neg, 2)]))
    }

    fn sweep_grid(&self, field: &FieldSpec) -> Vec<FamilyParams> {
        if self.check(field).is_err() {
            return Vec::new();
        }
        vec![
            FamilyParams::default().c(field.one()),
            FamilyParams::default().c(field.generator().clone()),
        ]
    }

    fn canonical_params(
        &self,
        field: &FieldSpec,
        params: &FamilyParams,
    ) -> Result<BTreeMap<String, String>> {
        self.check(field)?;
        let c = c_or_one(self.name(), field, params)?;
        Ok(BTreeMap::from([("c".to_string(), render_elem(&c))]))
    }
}

/// Q(x) = Tr(c(x^{10} − u x^6 − u² x²)), characteristic 3, odd m.
pub struct PlanarD;

impl PlanarD {
    fn resolve(
        &self,
        field: &FieldSpec,
        params: &FamilyParams,
    ) -> Result<(FieldElement, FieldElement)> {
        if field.p() != 3 {
            return Err(invalid("planar-d", "p must be 3"));
        }
        if field.m() % 2 == 0 {
            return Err(invalid("planar-d", "m must be odd"));
        }
        let c = c_or_one("planar-d", field, params)?;
        let u = params.u.clone().ok_or(Error::MissingParam {
            family: "planar-d",
            param: "u",
        })?;
        check_member("planar-d", field, &u, "u")?;
        Ok((c, u))
    }
}

impl BentFamily for PlanarD {
    fn name(&self) -> &'static str {
        "planar-d"
    }

    fn summary(&self) -> &'static str {
        "trace of c times x^10 - u x^6 - u^2 x^2 (p = 3, odd m)"
    }

    fn validate(&self, field: &FieldSpec, params: &FamilyParams) -> Result<()> {
        self.resolve(field, params).map(|_| ())
    }

    fn build(&self, field: &FieldSpec, params: &FamilyParams) -> Result<QFunction> {
        let (c, u) = self.resolve(field, params)?;
        let cu = field.mul(&c, &u);
        let cu2 = field.mul(&cu, &u);
        QFunction::from_terms(
            field.clone(),
            vec![(c, 10), (field.neg(&cu), 6), (field.neg(&cu2), 2)],
        )
    }

    fn planar_map(
        &self,
        field: &FieldSpec,
        params: &FamilyParams,
    ) -> Result<Option<Vec<(FieldElement, u64)>>> {
        let (_, u) = self.resolve(field, params)?;
        let u2 = field.mul(&u, &u);
        Ok(Some(vec![
            (field.one(), 10),
            (field.neg(&u), 6),
            (field.neg(&u2), 2),
        ]))
    }

    fn sweep_grid(&self, field: &FieldSpec) -> Vec<FamilyParams> {
        if field.p() != 3 || field.m() % 2 == 0 {
            return Vec::new();
        }
        let mut grid = Vec::new();
        for c in [field.one(), field.generator().clone()] {
            for u in [field.one(), field.generator().clone()] {
                grid.push(FamilyParams::default().c(c.clone()).u(u));
            }
        }
        grid
    }

    fn canonical_params(
        &self,
        field: &FieldSpec,
        params: &FamilyParams,
    ) -> Result<BTreeMap<String, String>> {
        let (c, u) = self.resolve(field, params)?;
        Ok(BTreeMap::from([
            ("c".to_string(), render_elem(&c)),
            ("u".to_string(), render_elem(&u)),
        ]))
    }
}

/// Q(x) = Tr(c(x^{p^s+1} − u^{p^k−1} x^{p^k+p^{2k+s}})) with m = 3k.
pub struct PlanarE;

impl PlanarE {
    #[allow(clippy::type_complexity)]
    fn resolve(
        &self,
        field: &FieldSpec,
        params: &FamilyParams,
    ) -> Result<(FieldElement, usize, usize, FieldElement)> {
        let m = field.m();
        if m % 3 != 0 {
            return Err(invalid("planar-e", "m must equal 3k"));
        }
        let k = params.k.unwrap_or(m / 3);
        if k * 3 != m {
            return Err(invalid("planar-e", "m must equal 3k"));
        }
        if gcd(k as u64, 3) != 1 {
            return Err(invalid("planar-e", "k must be coprime to 3"));
        }
        let s = params.s.ok_or(Error::MissingParam {
            family: "planar-e",
            param: "s",
        })?;
        if (k as i64 - s as i64).rem_euclid(3) != 0 {
            return Err(invalid("planar-e", "k - s must be divisible by 3"));
        }
        if s == k {
            return Err(invalid("planar-e", "s must differ from k"));
        }
        if (k as u64 / gcd(k as u64, s as u64)) % 2 == 0 {
            return Err(invalid("planar-e", "k/gcd(k,s) must be odd"));
        }
        let c = c_or_one("planar-e", field, params)?;
        let u = params
            .u
            .clone()
            .unwrap_or_else(|| field.generator().clone());
        check_member("planar-e", field, &u, "u")?;
        if !is_primitive(field, &u) {
            return Err(invalid("planar-e", "u must be a primitive element"));
        }
        Ok((c, k, s, u))
    }

    fn exponents(&self, p: u64, k: usize, s: usize) -> Result<(u64, u64)> {
        let e1 = pexp(p, s)? + 1;
        let e2 = pexp(p, k)?
            .checked_add(pexp(p, 2 * k + s)?)
            .ok_or(Error::OrderOverflow)?;
        Ok((e1, e2))
    }
}

impl BentFamily for PlanarE {
    fn name(&self) -> &'static str {
        "planar-e"
    }

    fn summary(&self) -> &'static str {
        "trace of c times x^{p^s+1} - u^{p^k-1} x^{p^k+p^{2k+s}} (m = 3k)"
    }

    fn validate(&self, field: &FieldSpec, params: &FamilyParams) -> Result<()> {
        self.resolve(field, params).map(|_| ())
    }

    fn build(&self, field: &FieldSpec, params: &FamilyParams) -> Result<QFunction> {
        let (c, k, s, u) = self.resolve(field, params)?;
        let (e1, e2) = self.exponents(field.p(), k, s)?;
        let scale = field.pow(&u, pexp(field.p(), k)? - 1);
        let second = field.neg(&field.mul(&c, &scale));
        QFunction::from_terms(field.clone(), vec![(c, e1), (second, e2)])
    }

    fn planar_map(
        &self,
        field: &FieldSpec,
        params: &FamilyParams,
    ) -> Result<Option<Vec<(FieldElement, u64)>>> {
        let (_, k, s, u) = self.resolve(field, params)?;
        let (e1, e2) = self.exponents(field.p(), k, s)?;
        let scale = field.pow(&u, pexp(field.p(), k)? - 1);
        Ok(Some(vec![(field.one(), e1), (field.neg(&scale), e2)]))
    }

    fn sweep_grid(&self, field: &FieldSpec) -> Vec<FamilyParams> {
        let m = field.m();
        if m % 3 != 0 {
            return Vec::new();
        }
        let k = m / 3;
        // the first admissible s gives one representative point per c
        let s = (1..=3 * m).find(|&s| {
            let params = FamilyParams::default().s(s);
            self.resolve(field, &params).is_ok()
        });
        let Some(s) = s else {
            return Vec::new();
        };
        vec![
            FamilyParams::default().c(field.one()).k(k).s(s),
            FamilyParams::default()
                .c(field.generator().clone())
                .k(k)
                .s(s),
        ]
    }

    fn canonical_params(
        &self,
        field: &FieldSpec,
        params: &FamilyParams,
    ) -> Result<BTreeMap<String, String>> {
        let (c, k, s, u) = self.resolve(field, params)?;
        Ok(BTreeMap::from([
            ("c".to_string(), render_elem(&c)),
            ("k".to_string(), k.to_string()),
            ("s".to_string(), s.to_string()),
            ("u".to_string(), render_elem(&u)),
        ]))
    }
}

/// Q(x) = Tr(c x^{p^j+1}), bent exactly when the divisibility criterion of
/// [`gold_is_bent`] holds for t = log_g(c).
pub struct Gold;

impl Gold {
    fn resolve(
        &self,
        field: &FieldSpec,
        params: &FamilyParams,
    ) -> Result<(FieldElement, usize, u64)> {
        let j = params.j.ok_or(Error::MissingParam {
            family: "gold",
            param: "j",
        })?;
        if j < 1 || j > field.m() {
            return Err(invalid("gold", "j must lie in 1..=m"));
        }
        let (c, t) = match (&params.c, params.t) {
            (Some(_), Some(_)) => {
                return Err(invalid("gold", "give either c or t, not both"));
            }
            (Some(c), None) => {
                check_member("gold", field, c, "c")?;
                if c.is_zero() {
                    return Err(invalid("gold", "c must be nonzero"));
                }
                let t = field.discrete_log(c).expect("nonzero c has a log");
                (c.clone(), t)
            }
            (None, Some(t)) => {
                let t = t % (field.order() - 1);
                (field.pow(field.generator(), t), t)
            }
            (None, None) => {
                return Err(Error::MissingParam {
                    family: "gold",
                    param: "c",
                });
            }
        };
        Ok((c, j, t))
    }
}

impl BentFamily for Gold {
    fn name(&self) -> &'static str {
        "gold"
    }

    fn summary(&self) -> &'static str {
        "trace of c times x^{p^j+1}; bent iff the divisibility criterion holds"
    }

    fn validate(&self, field: &FieldSpec, params: &FamilyParams) -> Result<()> {
        self.resolve(field, params).map(|_| ())
    }

    fn build(&self, field: &FieldSpec, params: &FamilyParams) -> Result<QFunction> {
        let (c, j, _) = self.resolve(field, params)?;
        let e = pexp(field.p(), j)? + 1;
        QFunction::from_terms(field.clone(), vec![(c, e)])
    }

    fn epsilon_predict(
        &self,
        field: &FieldSpec,
        params: &FamilyParams,
    ) -> Result<EpsilonPrediction> {
        let (c, j, _) = self.resolve(field, params)?;
        require_even_m(self.name(), field)?;
        // With m/gcd(m,j) odd this exponent is one of the validated planar
        // power maps, whose closed form applies; otherwise no prediction.
        let m = field.m() as u64;
        if m / gcd(m, j as u64) % 2 == 1 {
            Ok(EpsilonPrediction::Known(power_epsilon(field, &c)))
        } else {
            Ok(EpsilonPrediction::Unknown)
        }
    }

    fn sweep_grid(&self, field: &FieldSpec) -> Vec<FamilyParams> {
        let mut grid = Vec::new();
        for j in 1..=field.m() {
            for t in 0..field.order() - 1 {
                if gold_is_bent(field.p(), field.m(), j, t) {
                    grid.push(FamilyParams::default().j(j).t(t));
                }
            }
        }
        grid
    }

    fn canonical_params(
        &self,
        field: &FieldSpec,
        params: &FamilyParams,
    ) -> Result<BTreeMap<String, String>> {
        let (c, j, t) = self.resolve(field, params)?;
        Ok(BTreeMap::from([
            ("c".to_string(), render_elem(&c)),
            ("j".to_string(), j.to_string()),
            ("t".to_string(), t.to_string()),
        ]))
    }
}

/// Q(x) = Tr(c x^{p^{m/2}+1}) for even m with c + c^{p^{m/2}} ≠ 0.
pub struct Kasami;

impl Kasami {
    fn resolve(&self, field: &FieldSpec, params: &FamilyParams) -> Result<FieldElement> {
        if field.m() % 2 != 0 {
            return Err(invalid("kasami", "m must be even"));
        }
        let c = c_or_one("kasami", field, params)?;
        if !kasami_valid(field, &c)? {
            return Err(invalid("kasami", "c + c^{p^{m/2}} must be nonzero"));
        }
        Ok(c)
    }
}

impl BentFamily for Kasami {
    fn name(&self) -> &'static str {
        "kasami"
    }

    fn summary(&self) -> &'static str {
        "trace of c times x^{p^{m/2}+1} (even m, c + c^{p^{m/2}} nonzero)"
    }

    fn validate(&self, field: &FieldSpec, params: &FamilyParams) -> Result<()> {
        self.resolve(field, params).map(|_| ())
    }

    fn build(&self, field: &FieldSpec, params: &FamilyParams) -> Result<QFunction> {
        let c = self.resolve(field, params)?;
        let e = pexp(field.p(), field.m() / 2)? + 1;
        QFunction::from_terms(field.clone(), vec![(c, e)])
    }

    fn epsilon_predict(
        &self,
        field: &FieldSpec,
        params: &FamilyParams,
    ) -> Result<EpsilonPrediction> {
        self.resolve(field, params)?;
        Ok(EpsilonPrediction::Known(-1))
    }

    fn sweep_grid(&self, field: &FieldSpec) -> Vec<FamilyParams> {
        [field.one(), field.generator().clone()]
            .into_iter()
            .map(|c| FamilyParams::default().c(c))
            .filter(|params| self.validate(field, params).is_ok())
            .collect()
    }

    fn canonical_params(
        &self,
        field: &FieldSpec,
        params: &FamilyParams,
    ) -> Result<BTreeMap<String, String>> {
        let c = self.resolve(field, params)?;
        Ok(BTreeMap::from([("c".to_string(), render_elem(&c))]))
    }
}

/// The odd-m trace polynomial of [`hg_q`], parameterized by the step s.
pub struct Hg;

impl BentFamily for Hg {
    fn name(&self) -> &'static str {
        "hg"
    }

    fn summary(&self) -> &'static str {
        "odd-m trace polynomial built from an alternating sign sequence, composed with squaring"
    }

    fn validate(&self, field: &FieldSpec, params: &FamilyParams) -> Result<()> {
        let s = params.s.ok_or(Error::MissingParam {
            family: "hg",
            param: "s",
        })?;
        hg_build(field, s).map(|_| ())
    }

    fn build(&self, field: &FieldSpec, params: &FamilyParams) -> Result<QFunction> {
        let s = params.s.ok_or(Error::MissingParam {
            family: "hg",
            param: "s",
        })?;
        hg_q(field, s)
    }

    fn sweep_grid(&self, field: &FieldSpec) -> Vec<FamilyParams> {
        if field.m() % 2 == 0 || field.m() < 3 {
            return Vec::new();
        }
        (1..field.m())
            .filter(|&s| gcd(s as u64, field.m() as u64) == 1)
            .map(|s| FamilyParams::default().s(s))
            .collect()
    }

    fn canonical_params(
        &self,
        field: &FieldSpec,
        params: &FamilyParams,
    ) -> Result<BTreeMap<String, String>> {
        self.validate(field, params)?;
        let s = params.s.expect("validated above");
        Ok(BTreeMap::from([("s".to_string(), s.to_string())]))
    }
}

/// Q(x) = Σ_{i=0}^{⌊m/2⌋} Tr(c_i x^{p^i+1}) with caller-chosen coefficients.
pub struct PolyForm;

impl PolyForm {
    fn resolve(&self, field: &FieldSpec, params: &FamilyParams) -> Result<Vec<FieldElement>> {
        let coeffs = params.coeffs.clone().ok_or(Error::MissingParam {
            family: "poly",
            param: "coeffs",
        })?;
        let want = field.m() / 2 + 1;
        if coeffs.len() != want {
            return Err(invalid(
                "poly",
                format!("need exactly {want} coefficients c_0..c_{}", want - 1),
            ));
        }
        for c in &coeffs {
            check_member("poly", field, c, "coefficient")?;
        }
        Ok(coeffs)
    }
}

impl BentFamily for PolyForm {
    fn name(&self) -> &'static str {
        "poly"
    }

    fn summary(&self) -> &'static str {
        "general quadratic trace polynomial sum Tr(c_i x^{p^i+1}), i = 0..floor(m/2)"
    }

    fn validate(&self, field: &FieldSpec, params: &FamilyParams) -> Result<()> {
        self.resolve(field, params).map(|_| ())
    }

    fn build(&self, field: &FieldSpec, params: &FamilyParams) -> Result<QFunction> {
        let coeffs = self.resolve(field, params)?;
        let mut terms = Vec::with_capacity(coeffs.len());
        for (i, c) in coeffs.into_iter().enumerate() {
            terms.push((c, pexp(field.p(), i)? + 1));
        }
        QFunction::from_terms(field.clone(), terms)
    }

    fn sweep_grid(&self, field: &FieldSpec) -> Vec<FamilyParams> {
        // all prime-subfield coefficient vectors, kept when the result is
        // actually bent (the family itself carries no validity predicate)
        let len = field.m() / 2 + 1;
        let total = (field.p() as usize).pow(len as u32);
        let mut grid = Vec::new();
        for idx in 0..total {
            let mut rest = idx as u64;
            let mut coeffs = Vec::with_capacity(len);
            for _ in 0..len {
                coeffs.push(field.from_residue(rest % field.p()));
                rest /= field.p();
            }
            let params = FamilyParams::default().coeffs(coeffs);
            let bent = self
                .build(field, &params)
                .and_then(|q| q.is_bent_rank())
                .unwrap_or(false);
            if bent {
                grid.push(params);
            }
        }
        grid
    }

    fn canonical_params(
        &self,
        field: &FieldSpec,
        params: &FamilyParams,
    ) -> Result<BTreeMap<String, String>> {
        let coeffs = self.resolve(field, params)?;
        let rendered = coeffs
            .iter()
            .map(render_elem)
            .collect::<Vec<_>>()
            .join(";");
        Ok(BTreeMap::from([("coeffs".to_string(), rendered)]))
    }
}
