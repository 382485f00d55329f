//! WebAssembly entry points for the static demo page in `www/`.
//!
//! Every export returns a JSON string. Failures come back as
//! `{"error": "..."}` rather than exceptions, which keeps the functions
//! callable (and testable) off the browser too.

use eposic::channels::EposicChannel;
use eposic::clebsch::{epsilon_table as table_for, CgIndex};
use eposic::covariant::analyze_family;
use eposic::scalar::{rational, ExactScalar, Rational};
use serde::Serialize;
use wasm_bindgen::prelude::*;

#[derive(Serialize)]
struct Cell {
    exact: String,
    re: f64,
    im: f64,
}

impl Cell {
    fn new(x: &ExactScalar) -> Self {
        let z = x.to_complex();
        Self { exact: x.to_string(), re: z.re, im: z.im }
    }
}

#[derive(Serialize)]
struct ChoiView {
    m: u32,
    n: u32,
    h: u32,
    r: u32,
    trace: String,
    /// Row and column labels `f_k ⊗ f̄_i` in basis order.
    labels: Vec<String>,
    rows: Vec<Vec<Cell>>,
}

#[derive(Serialize)]
struct EpsilonView {
    m: u32,
    n: u32,
    h: u32,
    r: u32,
    values: Vec<EpsilonCell>,
}

#[derive(Serialize)]
struct EpsilonCell {
    i: u32,
    j: u32,
    exact: String,
    float: f64,
}

#[derive(Serialize)]
struct PositivityView {
    m: u32,
    alpha: String,
    threshold: String,
    threshold_float: f64,
    is_positive: bool,
    is_cp: bool,
    diagonal: Vec<Cell>,
    witness_eigenvalue: Option<String>,
}

#[derive(Serialize)]
struct CurvePoint {
    alpha: String,
    alpha_float: f64,
    min_diagonal: f64,
    witness_eigenvalue: f64,
    is_positive: bool,
    is_cp: bool,
}

fn to_json<T: Serialize>(v: Result<T, String>) -> String {
    match v {
        Ok(v) => serde_json::to_string(&v).expect("serializable"),
        Err(e) => serde_json::json!({ "error": e }).to_string(),
    }
}

fn index(m: u32, n: u32, h: u32) -> Result<CgIndex, String> {
    if m.max(n) > 8 {
        return Err("degrees above 8 are disabled in the demo".into());
    }
    CgIndex::new(m, n, h).map_err(|e| e.to_string())
}

fn parse_alpha(text: &str) -> Result<Rational, String> {
    let (p, q) = text.trim().split_once('/').unwrap_or((text.trim(), "1"));
    let p: i64 = p.trim().parse().map_err(|_| format!("bad numerator in {text:?}"))?;
    let q: i64 = q.trim().parse().map_err(|_| format!("bad denominator in {text:?}"))?;
    if q == 0 {
        return Err("zero denominator".into());
    }
    Ok(rational(p, q))
}

/// Choi matrix of `Φ_{m,n,h}` on `P_m ⊗ conj(P_r)`.
#[wasm_bindgen]
pub fn choi_matrix(m: u32, n: u32, h: u32) -> String {
    to_json(index(m, n, h).map(|ix| {
        let ch = EposicChannel::from_index(ix);
        let c = ch.choi();
        let labels = (0..=m).flat_map(|k| (0..=ix.r()).map(move |i| format!("f{k}⊗f̄{i}"))).collect();
        let rows = (0..c.rows()).map(|i| (0..c.cols()).map(|j| Cell::new(c.get(i, j))).collect()).collect();
        ChoiView { m, n, h, r: ix.r(), trace: c.trace().to_string(), labels, rows }
    }))
}

/// Nonzero coefficients `ε_i^j` of `α_{m,n,h}`.
#[wasm_bindgen]
pub fn epsilon_table(m: u32, n: u32, h: u32) -> String {
    to_json(index(m, n, h).map(|ix| {
        let t = table_for(ix);
        let values = t.iter().map(|(i, j, v)| EpsilonCell { i, j, exact: v.to_string(), float: v.to_f64() }).collect();
        EpsilonView { m, n, h, r: ix.r(), values }
    }))
}

/// Verdict for `Φ_{m,m+1,m} − α Φ_{m,m−1,m−1}`; `alpha` is `"P/Q"`.
#[wasm_bindgen]
pub fn positivity(m: u32, alpha: &str) -> String {
    let verdict = || -> Result<PositivityView, String> {
        if m > 8 {
            return Err("degrees above 8 are disabled in the demo".into());
        }
        let a = parse_alpha(alpha)?;
        let v = analyze_family(m, &a).map_err(|e| e.to_string())?;
        let threshold = ExactScalar::from_rational(v.threshold.clone());
        Ok(PositivityView {
            m,
            alpha: ExactScalar::from_rational(a).to_string(),
            threshold: threshold.to_string(),
            threshold_float: threshold.to_f64(),
            is_positive: v.is_positive,
            is_cp: v.is_cp,
            diagonal: v.diagonal.iter().map(Cell::new).collect(),
            witness_eigenvalue: v.witness.map(|(e, _)| e.to_string()),
        })
    };
    to_json(verdict())
}

/// `steps + 1` equally spaced rational α in `[0, 2/(m+2)]`, for plotting.
#[wasm_bindgen]
pub fn positivity_curve(m: u32, steps: u32) -> String {
    let curve = || -> Result<Vec<CurvePoint>, String> {
        if m > 8 || steps == 0 || steps > 400 {
            return Err("need 1 <= m <= 8 and 1 <= steps <= 400".into());
        }
        (0..=steps)
            .map(|k| {
                let a = rational(2 * k as i64, (m as i64 + 2) * steps as i64);
                let v = analyze_family(m, &a).map_err(|e| e.to_string())?;
                let min_diagonal = v.diagonal.iter().map(ExactScalar::to_f64).fold(f64::INFINITY, f64::min);
                let alpha = ExactScalar::from_rational(a.clone());
                Ok(CurvePoint {
                    alpha: alpha.to_string(),
                    alpha_float: alpha.to_f64(),
                    min_diagonal,
                    witness_eigenvalue: -2.0 * alpha.to_f64() / m as f64,
                    is_positive: v.is_positive,
                    is_cp: v.is_cp,
                })
            })
            .collect()
    };
    to_json(curve())
}
