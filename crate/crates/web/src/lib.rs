//! wasm-bindgen bindings for the browser demo in `www/`.
//!
//! Each export returns a JSON string; the plain `*_json` functions hold the
//! logic so they can be tested natively.

use serde::Serialize;
use wasm_bindgen::prelude::*;

use niho_corr::correlation::spectrum;
use niho_corr::field::Field;
use niho_corr::niho::{niho_count, y_exp_for_shift};
use niho_corr::report::{NihoCountJson, SpectrumJson};
use niho_corr::sequences::{theorem1_decimation, theorem2_decimation, DecimationParams};

/// Largest period the page will correlate (the direct path is quadratic).
pub const MAX_PERIOD: u64 = 20_000;

#[derive(Serialize)]
struct SpectrumView {
    summary: SpectrumJson,
    kind: String,
    bound: u64,
    per_shift: Vec<Option<i64>>,
}

#[derive(Serialize)]
struct CountView {
    count: NihoCountJson,
    circle_size: u64,
    kind: String,
}

#[derive(Serialize)]
struct Decimations {
    theorem1: u64,
    theorem2: u64,
    period: u64,
}

fn field(p: u64, m: u32) -> Result<Field, String> {
    if p < 3 || m == 0 {
        return Err("need an odd prime p and m >= 1".into());
    }
    let f = Field::with_default_poly(p, 2 * m).map_err(|e| e.to_string())?;
    if f.order() > MAX_PERIOD {
        return Err(format!("period {} exceeds the demo limit of {MAX_PERIOD}", f.order()));
    }
    Ok(f)
}

pub fn decimations_json(p: u64, m: u32) -> Result<String, String> {
    let f = field(p, m)?;
    let view = Decimations {
        theorem1: theorem1_decimation(p, m).map_err(|e| e.to_string())?,
        theorem2: theorem2_decimation(p, m).map_err(|e| e.to_string())?,
        period: f.order(),
    };
    Ok(serde_json::to_string(&view).expect("serializable"))
}

pub fn spectrum_json(p: u64, m: u32, d: u64) -> Result<String, String> {
    let f = field(p, m)?;
    let dec = DecimationParams::for_field(&f, d).map_err(|e| e.to_string())?;
    let r = spectrum(&f, dec).map_err(|e| e.to_string())?;
    let view = SpectrumView {
        summary: SpectrumJson::from(&r),
        kind: dec.kind.to_string(),
        bound: 4 * p.pow(m) - 1,
        per_shift: r.per_shift.clone(),
    };
    Ok(serde_json::to_string(&view).expect("serializable"))
}

pub fn niho_count_json(p: u64, m: u32, d: u64, tau: u64) -> Result<String, String> {
    let f = field(p, m)?;
    let dec = DecimationParams::for_field(&f, d).map_err(|e| e.to_string())?;
    if !dec.kind.is_niho() {
        return Err(format!("d = {d} is not of Niho type"));
    }
    if tau >= f.order() {
        return Err(format!("tau must be below {}", f.order()));
    }
    let c = niho_count(&f, &dec, y_exp_for_shift(f.order(), tau)).map_err(|e| e.to_string())?;
    let pm = p.pow(m);
    let view = CountView {
        count: NihoCountJson::new(tau, &c, pm),
        circle_size: pm + 1,
        kind: dec.kind.to_string(),
    };
    Ok(serde_json::to_string(&view).expect("serializable"))
}

#[wasm_bindgen]
pub fn decimations(p: u32, m: u32) -> Result<String, JsValue> {
    decimations_json(p as u64, m).map_err(|e| JsValue::from_str(&e))
}

/// Direct-path spectrum: distribution, per-shift values and the bound.
#[wasm_bindgen(js_name = spectrum)]
pub fn spectrum_js(p: u32, m: u32, d: u32) -> Result<String, JsValue> {
    spectrum_json(p as u64, m, d as u64).map_err(|e| JsValue::from_str(&e))
}

/// Unit-circle solutions for one shift.
#[wasm_bindgen(js_name = nihoCount)]
pub fn niho_count_js(p: u32, m: u32, d: u32, tau: u32) -> Result<String, JsValue> {
    niho_count_json(p as u64, m, d as u64, tau as u64).map_err(|e| JsValue::from_str(&e))
}
