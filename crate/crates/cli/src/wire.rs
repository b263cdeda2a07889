//! JSON wire formats.
//!
//! Forms: `{"n": 4, "linear": [1,1,1,1], "quad": [[1,2],[3,4]]}`, with 1-based
//! pairs `i < j` listing the non-zero `x_i x_j` coefficients.
//!
//! Cochains: `{"kind": "table", "n": 2, "logs": "<base64>"}` where bit `k` of
//! the log table sits in byte `k / 8` at bit `k % 8`, or for 3-cochains the
//! parametrized family `{"kind": "hwy", "a_r": [..], "a_rs": [..], "a_rst": [..]}`
//! (`n` optional, taken from `a_r`).
//!
//! Matrices are arrays of row integers, bit `j` of row `i` being entry `(i, j)`.

use base64::engine::general_purpose::STANDARD;
use base64::Engine;
use fsexp2::cocycle::{Cochain2, Cochain3, FamilyParams};
use fsexp2::gf2::{Gf2Matrix, Gf2Vector};
use fsexp2::quadratic::QuadraticForm;
use serde::Deserialize;
use serde_json::{json, Value};

use crate::CliError;

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct FormWire {
    n: usize,
    linear: Vec<u8>,
    #[serde(default)]
    quad: Vec<[usize; 2]>,
}

#[derive(Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
enum CochainWire {
    Table {
        n: usize,
        logs: String,
    },
    Hwy {
        n: Option<usize>,
        a_r: Vec<u8>,
        #[serde(default)]
        a_rs: Vec<u8>,
        #[serde(default)]
        a_rst: Vec<u8>,
    },
}

fn invalid(msg: impl Into<String>) -> CliError {
    CliError::Invalid(msg.into())
}

fn bits(name: &str, values: &[u8]) -> Result<Vec<bool>, CliError> {
    values
        .iter()
        .map(|&v| match v {
            0 => Ok(false),
            1 => Ok(true),
            _ => Err(invalid(format!("{name} entries must be 0 or 1, got {v}"))),
        })
        .collect()
}

fn to_bits(values: &[bool]) -> Vec<u8> {
    values.iter().map(|&b| u8::from(b)).collect()
}

pub fn parse_form(text: &str) -> Result<QuadraticForm, CliError> {
    let wire: FormWire = serde_json::from_str(text).map_err(|e| invalid(format!("form JSON: {e}")))?;
    let linear = bits("linear", &wire.linear)?;
    if linear.len() != wire.n {
        return Err(invalid(format!("linear has {} entries for n = {}", linear.len(), wire.n)));
    }
    if wire.n > fsexp2::quadratic::MAX_FORM_DIM {
        return Err(invalid(format!("form dimension {} exceeds 64", wire.n)));
    }
    let linear_bits = linear.iter().enumerate().fold(0u64, |acc, (i, &b)| acc | (u64::from(b) << i));
    let mut pairs = Vec::with_capacity(wire.quad.len());
    for [i, j] in wire.quad {
        if i == 0 || i >= j || j > wire.n {
            return Err(invalid(format!("quad pair [{i},{j}] must satisfy 1 <= i < j <= {}", wire.n)));
        }
        if pairs.contains(&(i - 1, j - 1)) {
            return Err(invalid(format!("quad pair [{i},{j}] listed twice")));
        }
        pairs.push((i - 1, j - 1));
    }
    Ok(QuadraticForm::new(wire.n, linear_bits, &pairs)?)
}

pub fn form_json(q: &QuadraticForm) -> Value {
    let linear: Vec<u8> = (0..q.dim()).map(|i| ((q.linear_bits() >> i) & 1) as u8).collect();
    let quad: Vec<[usize; 2]> = q.quad_pairs().iter().map(|&(i, j)| [i + 1, j + 1]).collect();
    json!({ "n": q.dim(), "linear": linear, "quad": quad })
}

pub fn matrix_json(f: &Gf2Matrix) -> Value {
    json!(f.row_u64s())
}

pub fn encode_bits(v: &Gf2Vector) -> String {
    let mut bytes = vec![0u8; v.len().div_ceil(8)];
    for k in v.ones() {
        bytes[k / 8] |= 1 << (k % 8);
    }
    STANDARD.encode(bytes)
}

pub fn decode_bits(text: &str, len: usize) -> Result<Gf2Vector, CliError> {
    let bytes = STANDARD.decode(text).map_err(|e| invalid(format!("logs is not base64: {e}")))?;
    if bytes.len() != len.div_ceil(8) {
        return Err(invalid(format!("logs holds {} bytes, expected {} for {len} bits", bytes.len(), len.div_ceil(8))));
    }
    let mut v = Gf2Vector::zeros(len);
    for (k, byte) in bytes.iter().enumerate() {
        for bit in 0..8 {
            if byte >> bit & 1 == 1 {
                let idx = 8 * k + bit;
                if idx >= len {
                    return Err(invalid("logs has non-zero padding bits"));
                }
                v.set(idx, true);
            }
        }
    }
    Ok(v)
}

fn table_dim(n: usize, arity: usize) -> Result<usize, CliError> {
    if n > fsexp2::cocycle::MAX_COCHAIN_DIM {
        return Err(invalid(format!("cochain dimension {n} exceeds the cap {}", fsexp2::cocycle::MAX_COCHAIN_DIM)));
    }
    Ok(1 << (arity * n))
}

/// A 3-cochain and its canonical echo.
pub fn parse_cochain3(text: &str) -> Result<(Cochain3, Value), CliError> {
    let wire: CochainWire = serde_json::from_str(text).map_err(|e| invalid(format!("cocycle JSON: {e}")))?;
    match wire {
        CochainWire::Table { n, logs } => {
            let table = decode_bits(&logs, table_dim(n, 3)?)?;
            let w = Cochain3::from_table(n, table)?;
            Ok((w.clone(), cochain3_json(&w)))
        }
        CochainWire::Hwy { n, a_r, a_rs, a_rst } => {
            let dim = n.unwrap_or(a_r.len());
            table_dim(dim, 3)?;
            let p = FamilyParams::new(dim, bits("a_r", &a_r)?, bits("a_rs", &a_rs)?, bits("a_rst", &a_rst)?)?;
            let echo = json!({
                "kind": "hwy",
                "n": dim,
                "a_r": to_bits(p.a_r()),
                "a_rs": to_bits(p.a_rs()),
                "a_rst": to_bits(p.a_rst()),
            });
            Ok((fsexp2::cocycle::family_cocycle(&p)?, echo))
        }
    }
}

pub fn parse_cochain2(text: &str) -> Result<Cochain2, CliError> {
    let wire: CochainWire = serde_json::from_str(text).map_err(|e| invalid(format!("braiding JSON: {e}")))?;
    match wire {
        CochainWire::Table { n, logs } => {
            let table = decode_bits(&logs, table_dim(n, 2)?)?;
            Ok(Cochain2::from_table(n, table)?)
        }
        CochainWire::Hwy { .. } => Err(invalid("a braiding must be given as a table")),
    }
}

pub fn cochain2_json(c: &Cochain2) -> Value {
    json!({ "kind": "table", "n": c.dim(), "logs": encode_bits(c.table()) })
}

pub fn cochain3_json(w: &Cochain3) -> Value {
    json!({ "kind": "table", "n": w.dim(), "logs": encode_bits(w.table()) })
}
