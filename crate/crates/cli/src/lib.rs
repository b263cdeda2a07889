//! Batch commands over JSON inputs, producing deterministic reports.
//!
//! Every command takes file contents (not paths) and returns a [`Report`];
//! the binary only does I/O and maps [`Report::exit_code`] to the process.

pub mod wire;

use fsexp2::cocycle::{
    self, certify_fsexp2, check_hexagons, fs_exponent, is_cocycle3, restriction_vector, EmPair, MAX_COCHAIN_DIM,
};
use fsexp2::modular::{self, build_category, prime_decomposition, MAX_CATEGORY_DIM};
use fsexp2::quadratic::{
    canonical_decomposition, enumerate_classes, is_pullback_witness, QuadraticForm, MAX_CENSUS_DIM, MAX_EXHAUSTIVE_DIM,
    MAX_FORM_DIM,
};
use serde::Serialize;
use serde_json::{json, Map, Value};
use thiserror::Error;

use wire::{cochain2_json, form_json, matrix_json, parse_cochain2, parse_cochain3, parse_form};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("verification failed: {0}")]
    Verification(String),
}

impl From<fsexp2::Error> for CliError {
    fn from(e: fsexp2::Error) -> Self {
        match e {
            fsexp2::Error::Internal(msg) => CliError::Verification(msg),
            other => CliError::Invalid(other.to_string()),
        }
    }
}

fn verified(ok: bool, what: &str) -> Result<(), CliError> {
    if ok {
        Ok(())
    } else {
        Err(CliError::Verification(format!("{what} failed re-verification")))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Ok,
    InvalidInput,
    VerificationFailed,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub command: &'static str,
    pub inputs: Value,
    pub result: Value,
    pub status: Status,
}

impl Report {
    fn finish(command: &'static str, inputs: Map<String, Value>, outcome: Result<Value, CliError>) -> Self {
        let (result, status) = match outcome {
            Ok(v) => (v, Status::Ok),
            Err(e) => {
                let status = match e {
                    CliError::Invalid(_) => Status::InvalidInput,
                    CliError::Verification(_) => Status::VerificationFailed,
                };
                (json!({ "error": e.to_string() }), status)
            }
        };
        Report { command, inputs: Value::Object(inputs), result, status }
    }

    pub fn invalid(command: &'static str, message: impl Into<String>) -> Self {
        Self::finish(command, Map::new(), Err(CliError::Invalid(message.into())))
    }

    /// 0 ok, 2 invalid input, 3 verification failed.
    pub fn exit_code(&self) -> i32 {
        match self.status {
            Status::Ok => 0,
            Status::InvalidInput => 2,
            Status::VerificationFailed => 3,
        }
    }

    /// Indented JSON with sorted keys, scalar arrays on one line, and a
    /// trailing newline.
    pub fn render(&self) -> String {
        let value = serde_json::to_value(self).expect("report serializes");
        let mut out = String::new();
        render_value(&value, 0, &mut out);
        out.push('\n');
        out
    }
}

fn render_value(v: &Value, indent: usize, out: &mut String) {
    let pad = |n: usize, out: &mut String| out.extend(std::iter::repeat_n(' ', n));
    match v {
        Value::Object(map) if !map.is_empty() => {
            out.push_str("{\n");
            for (k, (key, val)) in map.iter().enumerate() {
                pad(indent + 2, out);
                out.push_str(&Value::String(key.clone()).to_string());
                out.push_str(": ");
                render_value(val, indent + 2, out);
                out.push_str(if k + 1 < map.len() { ",\n" } else { "\n" });
            }
            pad(indent, out);
            out.push('}');
        }
        Value::Array(items) if items.iter().any(|i| i.is_array() || i.is_object()) => {
            out.push_str("[\n");
            for (k, item) in items.iter().enumerate() {
                pad(indent + 2, out);
                render_value(item, indent + 2, out);
                out.push_str(if k + 1 < items.len() { ",\n" } else { "\n" });
            }
            pad(indent, out);
            out.push(']');
        }
        Value::Array(items) => {
            let parts: Vec<String> = items.iter().map(Value::to_string).collect();
            out.push('[');
            out.push_str(&parts.join(", "));
            out.push(']');
        }
        scalar => out.push_str(&scalar.to_string()),
    }
}

/// `--max-n` may lower a compiled cap, never raise it.
fn effective_cap(max_n: Option<usize>, compiled: usize) -> Result<usize, CliError> {
    match max_n {
        None => Ok(compiled),
        Some(n) if n <= compiled => Ok(n),
        Some(n) => Err(CliError::Invalid(format!("--max-n {n} exceeds the compiled cap {compiled}"))),
    }
}

fn check_cap(n: usize, cap: usize, what: &str) -> Result<(), CliError> {
    if n > cap {
        return Err(CliError::Invalid(format!("{what} {n} exceeds the cap {cap}")));
    }
    Ok(())
}

/// `(dim, arf)` of a non-degenerate form.
fn invariants(q: &QuadraticForm) -> Result<(usize, u8), CliError> {
    if !q.is_nondegenerate() {
        return Err(CliError::Invalid(format!("form is degenerate (radical of dimension {})", q.radical().len())));
    }
    let arf = if q.dim() == 0 { 0 } else { q.arf()? };
    Ok((q.dim(), arf))
}

/// `(-1)^arf 2^m`, cross-checked against the exhaustive sum when feasible.
fn checked_tau(q: &QuadraticForm, arf: u8) -> Result<i64, CliError> {
    let tau = (if arf == 0 { 1i64 } else { -1 }) << (q.dim() / 2);
    if q.dim() <= MAX_EXHAUSTIVE_DIM {
        verified(q.gauss_sum()? == tau, "Gauss sum")?;
    }
    Ok(tau)
}

pub fn classify(form: &str, max_n: Option<usize>) -> Report {
    let mut inputs = Map::new();
    let outcome = (|| {
        let q = parse_form(form)?;
        inputs.insert("form".into(), form_json(&q));
        check_cap(q.dim(), effective_cap(max_n, MAX_FORM_DIM)?, "form dimension")?;
        let (n, arf) = invariants(&q)?;
        let tau = checked_tau(&q, arf)?;
        if n == 0 {
            return Ok(json!({
                "arf": 0, "m": 0, "tau_plus": 1, "xi": 1, "trivial": true,
                "decomposition": [], "witness": [], "canonical": form_json(&q),
            }));
        }
        let d = canonical_decomposition(&q)?;
        let canonical = d.canonical();
        verified(is_pullback_witness(&q, &canonical, &d.witness), "basis change")?;
        let from_tau = modular::classify_from_gauss_sum(tau)?;
        verified(from_tau.factors == d.blocks, "Gauss-sum classification")?;
        let labels: Vec<&str> = d.blocks.iter().map(|b| b.label()).collect();
        Ok(json!({
            "arf": arf,
            "m": n / 2,
            "tau_plus": tau,
            "xi": tau.signum(),
            "trivial": false,
            "decomposition": labels,
            "witness": matrix_json(&d.witness),
            "canonical": form_json(&canonical),
        }))
    })();
    Report::finish("classify", inputs, outcome)
}

pub fn verify_cocycle(cocycle: &str, braiding: Option<&str>, max_n: Option<usize>) -> Report {
    let mut inputs = Map::new();
    let outcome = (|| {
        let (w, echo) = parse_cochain3(cocycle)?;
        inputs.insert("cocycle".into(), echo);
        let c = braiding.map(parse_cochain2).transpose()?;
        inputs.insert("braiding".into(), c.as_ref().map_or(Value::Null, cochain2_json));
        check_cap(w.dim(), effective_cap(max_n, MAX_COCHAIN_DIM)?, "cochain dimension")?;
        if !is_cocycle3(&w) {
            return Err(CliError::Verification("the 3-cochain is not a cocycle".into()));
        }
        let lambda = restriction_vector(&w)?;
        let fsexp = fs_exponent(&w)?;
        let (certificate, certificate_status) = if w.dim() == 0 {
            (Value::Null, "trivial-group")
        } else {
            match certify_fsexp2(&w) {
                Ok(Some(cert)) => {
                    verified(cert.verify(&w), "trivializing cochain")?;
                    (cochain2_json(&cert.h), "emitted")
                }
                Ok(None) => (Value::Null, "not-applicable"),
                Err(fsexp2::Error::SignedWitnessUnavailable) => (Value::Null, "signed-witness-unavailable"),
                Err(e) => return Err(e.into()),
            }
        };
        let mut result = json!({
            "n": w.dim(),
            "is_cocycle3": true,
            "restriction_vector": lambda.entries(),
            "fs_exponent": fsexp,
            "trivializing_h": certificate,
            "certificate_status": certificate_status,
        });
        if let Some(c) = c {
            if c.dim() != w.dim() {
                return Err(CliError::Invalid(format!(
                    "braiding is on Z_2^{} but the cocycle on Z_2^{}",
                    c.dim(),
                    w.dim()
                )));
            }
            if !check_hexagons(&w, &c)? {
                return Err(CliError::Verification("hexagon axioms fail".into()));
            }
            let pair = EmPair::new(w.clone(), c.clone())?;
            let q = cocycle::trace(&pair)?;
            verified((0..1u64 << q.dim()).all(|x| q.sign(x) == c.sign(x, x)), "trace")?;
            result["hexagons"] = json!(true);
            result["trace"] = form_json(&q);
        }
        Ok(result)
    })();
    Report::finish("verify-cocycle", inputs, outcome)
}

pub fn equiv(form: &str, other: &str, max_n: Option<usize>) -> Report {
    let mut inputs = Map::new();
    let outcome = (|| {
        let q = parse_form(form)?;
        let q2 = parse_form(other)?;
        inputs.insert("forms".into(), json!([form_json(&q), form_json(&q2)]));
        let cap = effective_cap(max_n, MAX_COCHAIN_DIM)?;
        check_cap(q.dim().max(q2.dim()), cap, "form dimension")?;
        let (a, b) = (invariants(&q)?, invariants(&q2)?);
        let pairs = json!([[a.0, a.1], [b.0, b.1]]);
        if a != b {
            return Ok(json!({
                "equivalent": false,
                "verdict": "inequivalent",
                "invariants": pairs,
                "distinguishing": if a.0 != b.0 { "dim" } else { "arf" },
            }));
        }
        let data = modular::verify_equivalence(&q, &q2)?
            .ok_or_else(|| CliError::Verification("equal invariants but no equivalence found".into()))?;
        verified(is_pullback_witness(&q, &q2, &data.f), "basis change")?;
        verified(data.verify(&q, &q2)?, "monoidal structure")?;
        Ok(json!({
            "equivalent": true,
            "verdict": "equivalent",
            "invariants": pairs,
            "f": matrix_json(&data.f),
            "mu": cochain2_json(&data.mu),
        }))
    })();
    Report::finish("equiv", inputs, outcome)
}

pub fn enumerate(dim: usize, max_n: Option<usize>) -> Report {
    let mut inputs = Map::new();
    inputs.insert("dim".into(), json!(dim));
    let outcome = (|| {
        check_cap(dim, effective_cap(max_n, MAX_CENSUS_DIM)?, "census dimension")?;
        let census = enumerate_classes(dim)?;
        let m = dim / 2;
        let expected_arf0 = (1u64 << (m - 1)) * ((1u64 << m) + 1);
        verified(census.arf0 == expected_arf0, "Arf-0 count")?;
        if let Some(orbits) = census.orbits {
            verified(orbits == census.classes, "orbit count")?;
        }
        Ok(json!({
            "dim": dim,
            "m": m,
            "arf0": census.arf0,
            "arf1": census.arf1,
            "classes": census.classes,
            "orbits": census.orbits,
            "orbits_verified": census.orbits.is_some(),
        }))
    })();
    Report::finish("enumerate", inputs, outcome)
}

pub fn smatrix(form: &str, max_n: Option<usize>) -> Report {
    let mut inputs = Map::new();
    let outcome = (|| {
        let q = parse_form(form)?;
        inputs.insert("form".into(), form_json(&q));
        check_cap(q.dim(), effective_cap(max_n, MAX_CATEGORY_DIM)?, "form dimension")?;
        invariants(&q)?;
        let c = build_category(&q)?;
        let tau: i64 = c.t().iter().map(|&t| i64::from(t)).sum();
        verified(tau == c.tau_plus(), "Gauss sum")?;
        verified(tau == (if c.arf() == 0 { 1i64 } else { -1 }) << c.half_dim(), "Gauss sum against the Arf invariant")?;
        let decomposition = prime_decomposition(&c)?;
        verified(
            is_pullback_witness(&q, &decomposition.descriptor.form(), &decomposition.witness),
            "prime decomposition",
        )?;
        let s: Vec<&[i8]> = c.s_rows().collect();
        Ok(json!({
            "n": c.dim(),
            "q": form_json(&q),
            "S": s,
            "T": c.t(),
            "tau_plus": c.tau_plus(),
            "xi": c.central_charge(),
            "arf": c.arf(),
            "decomposition": decomposition.descriptor.labels(),
            "trivial": c.is_trivial(),
        }))
    })();
    Report::finish("smatrix", inputs, outcome)
}
