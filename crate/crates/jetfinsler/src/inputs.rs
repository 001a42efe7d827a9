//! User-specifiable ingredients of the model: the conformal factor σ(x) with
//! exact derivatives, the temporal Riemannian metric h₁₁(t) with its
//! Christoffel symbol, and the flat key=value configuration grammar that
//! describes both.
//!
//! The built-in σ families (constant, linear, quadratic, polynomial of total
//! degree ≤ 6) all admit exact analytic differentiation, so the closed-form
//! side of the library never touches a finite difference.  The same fields
//! evaluate generically over any [`AdScalar`], which is what the generic
//! engine differentiates through.

use crate::ad::AdScalar;
use crate::error::{Error, Result};

pub const MAX_POLY_DEGREE: u32 = 6;

/// One monomial `coeff · (x¹)^e1 (x²)^e2 (x³)^e3 (x⁴)^e4`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PolyTerm {
    pub exps: [u32; 4],
    pub coeff: f64,
}

/// Conformal factor σ(x) on the base manifold.
#[derive(Debug, Clone, PartialEq)]
pub enum ScalarField {
    /// σ = c.  Permitted although the model stipulates a non-constant σ: it
    /// is the degenerate regression case where every connection and
    /// curvature object must vanish identically.
    Constant(f64),
    /// σ = Σ aᵢ xⁱ.
    Linear([f64; 4]),
    /// σ = ½ xᵀQx + aᵀx with Q symmetric.
    Quadratic { q: [[f64; 4]; 4], a: [f64; 4] },
    /// Sparse monomial table, total degree ≤ 6, no duplicate exponent tuples.
    Polynomial(Vec<PolyTerm>),
}

/// σ and its derivatives to order 2, plus the derived aggregates used by the
/// closed-form geometry: div D_σ, ‖grad σ‖², Δσ, 𝔖 = Σ σ_pq and the
/// gradient of div D_σ.
#[derive(Debug, Clone, PartialEq)]
pub struct ScalarFieldEval {
    pub value: f64,
    pub grad: [f64; 4],
    pub hess: [[f64; 4]; 4],
    pub div_d: f64,
    pub grad_norm2: f64,
    pub laplacian: f64,
    pub frak_s: f64,
    pub div_d_grad: [f64; 4],
}

impl ScalarField {
    /// Checks the structural invariants of the description.
    pub fn validate(&self) -> Result<()> {
        match self {
            ScalarField::Constant(_) | ScalarField::Linear(_) => Ok(()),
            ScalarField::Quadratic { q, .. } => {
                for i in 0..4 {
                    for j in (i + 1)..4 {
                        if q[i][j] != q[j][i] {
                            return Err(Error::MalformedField(format!(
                                "quadratic Q not symmetric at ({},{})",
                                i + 1,
                                j + 1
                            )));
                        }
                    }
                }
                Ok(())
            }
            ScalarField::Polynomial(terms) => {
                for (idx, t) in terms.iter().enumerate() {
                    let deg: u32 = t.exps.iter().sum();
                    if deg > MAX_POLY_DEGREE {
                        return Err(Error::MalformedField(format!(
                            "term {} has total degree {deg} > {MAX_POLY_DEGREE}",
                            idx + 1
                        )));
                    }
                    if !t.coeff.is_finite() {
                        return Err(Error::MalformedField(format!(
                            "term {} has non-finite coefficient",
                            idx + 1
                        )));
                    }
                }
                for i in 0..terms.len() {
                    for j in (i + 1)..terms.len() {
                        if terms[i].exps == terms[j].exps {
                            return Err(Error::MalformedField(format!(
                                "duplicate exponent tuple {:?}",
                                terms[i].exps
                            )));
                        }
                    }
                }
                Ok(())
            }
        }
    }

    /// Evaluates σ in any differentiable scalar arithmetic.  This is the
    /// path the generic engine differentiates; it shares no derivative code
    /// with the analytic tables in [`eval_sigma`].
    pub fn value_generic<T: AdScalar>(&self, x: &[T]) -> T {
        match self {
            ScalarField::Constant(c) => T::from_f64(*c),
            ScalarField::Linear(a) => {
                let mut s = T::zero();
                for i in 0..4 {
                    s = s + x[i].scale(a[i]);
                }
                s
            }
            ScalarField::Quadratic { q, a } => {
                let mut s = T::zero();
                for i in 0..4 {
                    for j in 0..4 {
                        s = s + (x[i] * x[j]).scale(0.5 * q[i][j]);
                    }
                    s = s + x[i].scale(a[i]);
                }
                s
            }
            ScalarField::Polynomial(terms) => {
                let mut s = T::zero();
                for t in terms {
                    let mut m = T::from_f64(t.coeff);
                    for i in 0..4 {
                        if t.exps[i] > 0 {
                            m = m * x[i].powu(t.exps[i]);
                        }
                    }
                    s = s + m;
                }
                s
            }
        }
    }
}

/// Evaluates σ and its exact analytic derivatives at `x`, together with the
/// derived aggregates.  The aggregates are recomputed from grad/hess here,
/// so the `ScalarFieldEval` invariants hold by construction.
pub fn eval_sigma(field: &ScalarField, x: &[f64; 4]) -> Result<ScalarFieldEval> {
    field.validate()?;
    let mut value = 0.0;
    let mut grad = [0.0f64; 4];
    let mut hess = [[0.0f64; 4]; 4];
    match field {
        ScalarField::Constant(c) => value = *c,
        ScalarField::Linear(a) => {
            for i in 0..4 {
                value += a[i] * x[i];
            }
            grad = *a;
        }
        ScalarField::Quadratic { q, a } => {
            for i in 0..4 {
                for j in 0..4 {
                    value += 0.5 * q[i][j] * x[i] * x[j];
                }
                value += a[i] * x[i];
            }
            for i in 0..4 {
                grad[i] = a[i] + (0..4).map(|j| q[i][j] * x[j]).sum::<f64>();
            }
            hess = *q;
        }
        ScalarField::Polynomial(terms) => {
            let powi = |v: f64, e: u32| -> f64 { v.powi(e as i32) };
            for t in terms {
                let e = t.exps;
                value += t.coeff * (0..4).map(|i| powi(x[i], e[i])).product::<f64>();
                for i in 0..4 {
                    if e[i] == 0 {
                        continue;
                    }
                    let mut d = t.coeff * e[i] as f64 * powi(x[i], e[i] - 1);
                    for j in 0..4 {
                        if j != i {
                            d *= powi(x[j], e[j]);
                        }
                    }
                    grad[i] += d;
                }
                for i in 0..4 {
                    // diagonal: e_i (e_i - 1) x^{e_i - 2}
                    if e[i] >= 2 {
                        let mut d =
                            t.coeff * (e[i] * (e[i] - 1)) as f64 * powi(x[i], e[i] - 2);
                        for j in 0..4 {
                            if j != i {
                                d *= powi(x[j], e[j]);
                            }
                        }
                        hess[i][i] += d;
                    }
                    for j in (i + 1)..4 {
                        if e[i] == 0 || e[j] == 0 {
                            continue;
                        }
                        let mut d = t.coeff
                            * (e[i] * e[j]) as f64
                            * powi(x[i], e[i] - 1)
                            * powi(x[j], e[j] - 1);
                        for k in 0..4 {
                            if k != i && k != j {
                                d *= powi(x[k], e[k]);
                            }
                        }
                        hess[i][j] += d;
                        hess[j][i] += d;
                    }
                }
            }
        }
    }

    let div_d = grad.iter().sum();
    let grad_norm2 = grad.iter().map(|g| g * g).sum();
    let laplacian = (0..4).map(|i| hess[i][i]).sum();
    let frak_s = hess.iter().flatten().sum();
    let mut div_d_grad = [0.0f64; 4];
    for i in 0..4 {
        div_d_grad[i] = (0..4).map(|p| hess[p][i]).sum();
    }
    Ok(ScalarFieldEval {
        value,
        grad,
        hess,
        div_d,
        grad_norm2,
        laplacian,
        frak_s,
        div_d_grad,
    })
}

/// Riemannian metric h₁₁(t) on the time axis.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum TemporalMetric {
    /// h₁₁ = h₀ > 0.
    Constant(f64),
    /// h₁₁ = tᵏ on t > 0.
    Power(f64),
    /// h₁₁ = e^{λt}.
    Exponential(f64),
}

/// h₁₁, its dual h¹¹ and the Christoffel symbol ϰ¹₁₁ = (h¹¹/2)·dh₁₁/dt
/// at one value of t.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TemporalEval {
    pub h11: f64,
    pub h11_inv: f64,
    pub kappa: f64,
}

impl TemporalMetric {
    /// True when `t` lies in the metric's domain of definition.
    pub fn domain_ok(&self, t: f64) -> bool {
        match self {
            TemporalMetric::Constant(h0) => *h0 > 0.0,
            TemporalMetric::Power(_) => t > 0.0,
            TemporalMetric::Exponential(_) => t.is_finite(),
        }
    }

    /// h₁₁(t) in differentiable arithmetic; `t` must satisfy [`Self::domain_ok`].
    pub fn h11_generic<T: AdScalar>(&self, t: T) -> T {
        match self {
            TemporalMetric::Constant(h0) => T::from_f64(*h0),
            TemporalMetric::Power(k) => t.powf_c(*k),
            TemporalMetric::Exponential(l) => t.scale(*l).exp(),
        }
    }

    /// h¹¹(t) = 1/h₁₁(t) in differentiable arithmetic.
    pub fn h11_inv_generic<T: AdScalar>(&self, t: T) -> T {
        T::one() / self.h11_generic(t)
    }

    /// ϰ¹₁₁(t) = (h¹¹/2)·dh₁₁/dt in differentiable arithmetic.
    pub fn kappa_generic<T: AdScalar>(&self, t: T) -> T {
        match self {
            TemporalMetric::Constant(_) => T::zero(),
            TemporalMetric::Power(k) => T::from_f64(*k) / t.scale(2.0),
            TemporalMetric::Exponential(l) => T::from_f64(l / 2.0),
        }
    }
}

/// Evaluates h₁₁, h¹¹ and ϰ¹₁₁ from the analytic derivative of h₁₁.
pub fn eval_h(metric: &TemporalMetric, t: f64) -> Result<TemporalEval> {
    if !metric.domain_ok(t) {
        return Err(Error::Domain(format!(
            "t = {t} outside the domain of {metric:?}"
        )));
    }
    let (h11, kappa) = match metric {
        TemporalMetric::Constant(h0) => (*h0, 0.0),
        // dh/dt = k t^{k-1}  =>  kappa = k/(2t)
        TemporalMetric::Power(k) => (t.powf(*k), k / (2.0 * t)),
        // dh/dt = lambda e^{lambda t}  =>  kappa = lambda/2
        TemporalMetric::Exponential(l) => ((l * t).exp(), l / 2.0),
    };
    if !(h11 > 0.0) || !h11.is_finite() {
        return Err(Error::Domain(format!("h11({t}) = {h11} is not positive")));
    }
    Ok(TemporalEval {
        h11,
        h11_inv: 1.0 / h11,
        kappa,
    })
}

// --- configuration grammar -------------------------------------------------
//
// Flat key=value, one per line, `#` starts a comment.  Keys:
//   sigma.kind   constant | linear | quadratic | polynomial
//   sigma.coeffs comma-separated reals (constant: 1, linear: 4,
//                quadratic: 16 row-major Q then 4 linear)
//   sigma.terms  polynomial monomials `e1.e2.e3.e4:coeff`, comma-separated
//   h.kind       constant | power | exponential
//   h.params     one real (h0 / k / lambda)
//
// The same keys are accepted as CLI flags; later pairs override earlier ones.

/// One parsed `key=value` pair with its source line (0 for synthetic pairs
/// such as CLI flags).
#[derive(Debug, Clone, PartialEq)]
pub struct ConfigPair {
    pub line: usize,
    pub key: String,
    pub value: String,
}

const KNOWN_KEYS: [&str; 5] = [
    "sigma.kind",
    "sigma.coeffs",
    "sigma.terms",
    "h.kind",
    "h.params",
];

/// Splits configuration text into key=value pairs, rejecting unknown keys
/// and malformed lines.
pub fn parse_config_pairs(text: &str) -> Result<Vec<ConfigPair>> {
    let mut pairs = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = match raw.find('#') {
            Some(p) => &raw[..p],
            None => raw,
        };
        let content = content.trim();
        if content.is_empty() {
            continue;
        }
        let (key, value) = content.split_once('=').ok_or_else(|| Error::Parse {
            line,
            key: content.to_string(),
            msg: "expected key=value".into(),
        })?;
        let key = key.trim().to_string();
        if !KNOWN_KEYS.contains(&key.as_str()) {
            return Err(Error::Parse {
                line,
                key,
                msg: "unknown key".into(),
            });
        }
        pairs.push(ConfigPair {
            line,
            key,
            value: value.trim().to_string(),
        });
    }
    Ok(pairs)
}

fn parse_reals(pair: &ConfigPair) -> Result<Vec<f64>> {
    pair.value
        .split(',')
        .map(|s| {
            s.trim().parse::<f64>().map_err(|_| Error::Parse {
                line: pair.line,
                key: pair.key.clone(),
                msg: format!("`{}` is not a real number", s.trim()),
            })
        })
        .collect()
}

/// Builds the field pair from parsed key=value pairs; later occurrences of a
/// key override earlier ones (this is how CLI flags override a config file).
/// Absent σ defaults to the constant 0 field, absent h to the unit metric.
pub fn build_fields(pairs: &[ConfigPair]) -> Result<(ScalarField, TemporalMetric)> {
    let last = |key: &str| pairs.iter().rev().find(|p| p.key == key);

    let sigma = match last("sigma.kind") {
        None => {
            if let Some(p) = last("sigma.coeffs").or_else(|| last("sigma.terms")) {
                return Err(Error::Parse {
                    line: p.line,
                    key: p.key.clone(),
                    msg: "given without sigma.kind".into(),
                });
            }
            ScalarField::Constant(0.0)
        }
        Some(kind_pair) => {
            let kind = kind_pair.value.as_str();
            let coeffs_pair = last("sigma.coeffs");
            let need_coeffs = |count: usize| -> Result<Vec<f64>> {
                let p = coeffs_pair.ok_or_else(|| Error::Parse {
                    line: kind_pair.line,
                    key: "sigma.coeffs".into(),
                    msg: format!("required for sigma.kind={kind}"),
                })?;
                let v = parse_reals(p)?;
                if v.len() != count {
                    return Err(Error::Parse {
                        line: p.line,
                        key: p.key.clone(),
                        msg: format!("expected {count} values, got {}", v.len()),
                    });
                }
                Ok(v)
            };
            match kind {
                "constant" => ScalarField::Constant(need_coeffs(1)?[0]),
                "linear" => {
                    let v = need_coeffs(4)?;
                    ScalarField::Linear([v[0], v[1], v[2], v[3]])
                }
                "quadratic" => {
                    let v = need_coeffs(20)?;
                    let mut q = [[0.0; 4]; 4];
                    for i in 0..4 {
                        for j in 0..4 {
                            q[i][j] = v[4 * i + j];
                        }
                    }
                    let a = [v[16], v[17], v[18], v[19]];
                    let f = ScalarField::Quadratic { q, a };
                    f.validate().map_err(|e| Error::Parse {
                        line: coeffs_pair.map(|p| p.line).unwrap_or(kind_pair.line),
                        key: "sigma.coeffs".into(),
                        msg: e.to_string(),
                    })?;
                    f
                }
                "polynomial" => {
                    let p = last("sigma.terms").ok_or_else(|| Error::Parse {
                        line: kind_pair.line,
                        key: "sigma.terms".into(),
                        msg: "required for sigma.kind=polynomial".into(),
                    })?;
                    let mut terms = Vec::new();
                    for chunk in p.value.split(',') {
                        let chunk = chunk.trim();
                        let (exps_s, coeff_s) =
                            chunk.split_once(':').ok_or_else(|| Error::Parse {
                                line: p.line,
                                key: p.key.clone(),
                                msg: format!("term `{chunk}` is not e1.e2.e3.e4:coeff"),
                            })?;
                        let exps_v: Vec<&str> = exps_s.split('.').collect();
                        if exps_v.len() != 4 {
                            return Err(Error::Parse {
                                line: p.line,
                                key: p.key.clone(),
                                msg: format!("term `{chunk}` needs 4 exponents"),
                            });
                        }
                        let mut exps = [0u32; 4];
                        for (i, e) in exps_v.iter().enumerate() {
                            exps[i] = e.trim().parse().map_err(|_| Error::Parse {
                                line: p.line,
                                key: p.key.clone(),
                                msg: format!("exponent `{e}` is not a non-negative integer"),
                            })?;
                        }
                        let coeff = coeff_s.trim().parse().map_err(|_| Error::Parse {
                            line: p.line,
                            key: p.key.clone(),
                            msg: format!("coefficient `{coeff_s}` is not a real number"),
                        })?;
                        terms.push(PolyTerm { exps, coeff });
                    }
                    let f = ScalarField::Polynomial(terms);
                    f.validate().map_err(|e| Error::Parse {
                        line: p.line,
                        key: p.key.clone(),
                        msg: e.to_string(),
                    })?;
                    f
                }
                other => {
                    return Err(Error::Parse {
                        line: kind_pair.line,
                        key: kind_pair.key.clone(),
                        msg: format!(
                            "unknown sigma kind `{other}` (constant|linear|quadratic|polynomial)"
                        ),
                    })
                }
            }
        }
    };

    let h = match last("h.kind") {
        None => {
            if let Some(p) = last("h.params") {
                return Err(Error::Parse {
                    line: p.line,
                    key: p.key.clone(),
                    msg: "given without h.kind".into(),
                });
            }
            TemporalMetric::Constant(1.0)
        }
        Some(kind_pair) => {
            let p = last("h.params").ok_or_else(|| Error::Parse {
                line: kind_pair.line,
                key: "h.params".into(),
                msg: format!("required for h.kind={}", kind_pair.value),
            })?;
            let v = parse_reals(p)?;
            if v.len() != 1 {
                return Err(Error::Parse {
                    line: p.line,
                    key: p.key.clone(),
                    msg: format!("expected 1 value, got {}", v.len()),
                });
            }
            match kind_pair.value.as_str() {
                "constant" => {
                    if v[0] <= 0.0 {
                        return Err(Error::Parse {
                            line: p.line,
                            key: p.key.clone(),
                            msg: format!("constant h11 must be positive, got {}", v[0]),
                        });
                    }
                    TemporalMetric::Constant(v[0])
                }
                "power" => TemporalMetric::Power(v[0]),
                "exponential" => TemporalMetric::Exponential(v[0]),
                other => {
                    return Err(Error::Parse {
                        line: kind_pair.line,
                        key: kind_pair.key.clone(),
                        msg: format!("unknown h kind `{other}` (constant|power|exponential)"),
                    })
                }
            }
        }
    };

    Ok((sigma, h))
}

/// Parses a complete configuration text into validated field objects.
pub fn parse_field_config(text: &str) -> Result<(ScalarField, TemporalMetric)> {
    build_fields(&parse_config_pairs(text)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn linear_field_eval() {
        let f = ScalarField::Linear([1.0, 0.0, 0.0, 0.0]);
        let e = eval_sigma(&f, &[3.7, -2.0, 0.4, 9.0]).unwrap();
        assert_eq!(e.value, 3.7);
        assert_eq!(e.grad, [1.0, 0.0, 0.0, 0.0]);
        assert_eq!(e.hess, [[0.0; 4]; 4]);
        assert_eq!(e.div_d, 1.0);
        assert_eq!(e.grad_norm2, 1.0);
        assert_eq!(e.laplacian, 0.0);
        assert_eq!(e.frak_s, 0.0);
    }

    #[test]
    fn quadratic_field_eval() {
        // sigma = (1/2) sum (x^i)^2
        let mut q = [[0.0; 4]; 4];
        for i in 0..4 {
            q[i][i] = 1.0;
        }
        let f = ScalarField::Quadratic { q, a: [0.0; 4] };
        let e = eval_sigma(&f, &[1.0, 2.0, 3.0, 4.0]).unwrap();
        assert_eq!(e.grad, [1.0, 2.0, 3.0, 4.0]);
        for i in 0..4 {
            for j in 0..4 {
                assert_eq!(e.hess[i][j], if i == j { 1.0 } else { 0.0 });
            }
        }
        assert_eq!(e.div_d, 10.0);
        assert_eq!(e.laplacian, 4.0);
        assert_eq!(e.frak_s, 4.0);
    }

    #[test]
    fn asymmetric_quadratic_rejected() {
        let mut q = [[0.0; 4]; 4];
        q[0][1] = 1.0;
        let f = ScalarField::Quadratic { q, a: [0.0; 4] };
        assert!(matches!(
            eval_sigma(&f, &[0.0; 4]),
            Err(Error::MalformedField(_))
        ));
    }

    #[test]
    fn duplicate_poly_term_rejected() {
        let f = ScalarField::Polynomial(vec![
            PolyTerm {
                exps: [1, 0, 2, 0],
                coeff: 1.0,
            },
            PolyTerm {
                exps: [1, 0, 2, 0],
                coeff: -3.0,
            },
        ]);
        assert!(f.validate().is_err());
    }

    #[test]
    fn degree_cap_enforced() {
        let f = ScalarField::Polynomial(vec![PolyTerm {
            exps: [3, 2, 1, 1],
            coeff: 1.0,
        }]);
        assert!(f.validate().is_err());
    }

    #[test]
    fn eval_h_kinds() {
        let e = eval_h(&TemporalMetric::Constant(1.0), -5.0).unwrap();
        assert_eq!((e.h11, e.h11_inv, e.kappa), (1.0, 1.0, 0.0));

        let e = eval_h(&TemporalMetric::Power(2.0), 2.0).unwrap();
        assert_eq!(e.h11, 4.0);
        assert_eq!(e.h11_inv, 0.25);
        assert_eq!(e.kappa, 0.5);

        let e = eval_h(&TemporalMetric::Exponential(2.0), 0.3).unwrap();
        assert!((e.kappa - 1.0).abs() < 1e-15);
    }

    #[test]
    fn eval_h_domain() {
        assert!(eval_h(&TemporalMetric::Power(2.0), 0.0).is_err());
        assert!(eval_h(&TemporalMetric::Power(2.0), -1.0).is_err());
        assert!(eval_h(&TemporalMetric::Constant(-1.0), 1.0).is_err());
    }

    #[test]
    fn parse_canonical_configs() {
        let (s, h) = parse_field_config(
            "sigma.kind=linear\nsigma.coeffs=1,0,0,0\nh.kind=constant\nh.params=1\n",
        )
        .unwrap();
        assert_eq!(s, ScalarField::Linear([1.0, 0.0, 0.0, 0.0]));
        assert_eq!(h, TemporalMetric::Constant(1.0));

        let (s, h) = parse_field_config(
            "# comment\nsigma.kind=constant\nsigma.coeffs=0.5\nh.kind=power\nh.params=2\n",
        )
        .unwrap();
        assert_eq!(s, ScalarField::Constant(0.5));
        assert_eq!(h, TemporalMetric::Power(2.0));
    }

    #[test]
    fn parse_missing_coeffs_rejected() {
        let err = parse_field_config("sigma.kind=linear\nh.kind=constant\nh.params=1\n");
        assert!(matches!(err, Err(Error::Parse { .. })));
    }

    #[test]
    fn parse_unknown_key_rejected() {
        let err = parse_field_config("sigma.knid=linear\n");
        match err {
            Err(Error::Parse { line, key, .. }) => {
                assert_eq!(line, 1);
                assert_eq!(key, "sigma.knid");
            }
            other => panic!("expected parse error, got {other:?}"),
        }
    }

    #[test]
    fn parse_polynomial_terms() {
        let (s, _) = parse_field_config(
            "sigma.kind=polynomial\nsigma.terms=1.0.0.0:2.5, 0.2.0.0:1.0\n",
        )
        .unwrap();
        match s {
            ScalarField::Polynomial(t) => {
                assert_eq!(t.len(), 2);
                assert_eq!(t[0].exps, [1, 0, 0, 0]);
                assert_eq!(t[0].coeff, 2.5);
                assert_eq!(t[1].exps, [0, 2, 0, 0]);
            }
            other => panic!("expected polynomial, got {other:?}"),
        }
    }

    #[test]
    fn later_pairs_override() {
        let mut pairs = parse_config_pairs("sigma.kind=constant\nsigma.coeffs=1\n").unwrap();
        pairs.push(ConfigPair {
            line: 0,
            key: "sigma.coeffs".into(),
            value: "2".into(),
        });
        let (s, _) = build_fields(&pairs).unwrap();
        assert_eq!(s, ScalarField::Constant(2.0));
    }
}
