//! Browser bindings: each export takes plain strings and returns a JSON
//! document, `{"ok": ...}` on success or `{"error": "..."}` on failure.

use serde::Serialize;
use wasm_bindgen::prelude::*;

use pcr_core::apolarity::{gorenstein_socle_check, hilbert_profile, ApolarForm};
use pcr_core::bigfloat::{format_real, ComplexField};
use pcr_core::jacring::Certificate;
use pcr_core::lattice::{min_poly, minkowski_bound};
use pcr_core::polyring::parse_rational_poly;
use pcr_core::Hypersurface;

#[derive(Serialize)]
struct JacobianRing {
    n: usize,
    d: u32,
    middle_degree: i64,
    dims: Vec<usize>,
    expected: Vec<usize>,
    smooth: bool,
    certificate: String,
}

#[derive(Serialize)]
struct Apolar {
    degree: u32,
    profile: Vec<usize>,
    gorenstein: bool,
}

#[derive(Serialize)]
struct MinPoly {
    degree: usize,
    minpoly: String,
    residual: String,
}

fn respond<T: Serialize>(r: pcr_core::Result<T>) -> String {
    match r {
        Ok(v) => serde_json::json!({ "ok": v }).to_string(),
        Err(e) => serde_json::json!({ "error": e.to_string() }).to_string(),
    }
}

fn jacobian_ring_impl(f: &str) -> pcr_core::Result<JacobianRing> {
    let x = Hypersurface::new(parse_rational_poly(f, None)?)?;
    let h = x.hilbert_check();
    Ok(JacobianRing {
        n: x.n(),
        d: x.d(),
        middle_degree: x.middle_degree(),
        dims: h.dims.clone(),
        expected: h.expected.clone(),
        smooth: h.smooth,
        certificate: match h.certificate {
            Certificate::ModP(p) => format!("mod-p rank, p = {p}"),
            Certificate::Exact => "exact".into(),
        },
    })
}

fn apolar_impl(g: &str) -> pcr_core::Result<Apolar> {
    let g = ApolarForm::new(parse_rational_poly(g, None)?);
    Ok(Apolar { degree: g.degree(), profile: hilbert_profile(&g)?, gorenstein: gorenstein_socle_check(&g)? })
}

fn minpoly_impl(value: &str, maxdeg: usize, digits: usize) -> pcr_core::Result<MinPoly> {
    let cf = ComplexField::with_digits(digits);
    let z = if value.contains(',') { cf.parse(value)? } else { cf.parse(&format!("{value},0"))? };
    let a = min_poly(&z, maxdeg, digits)?;
    Ok(MinPoly { degree: a.degree(), minpoly: a.render(), residual: format_real(&a.residual, 6) })
}

/// Dimensions of the graded Jacobian ring of `f` and the smoothness verdict.
#[wasm_bindgen]
pub fn jacobian_ring(f: &str) -> String {
    respond(jacobian_ring_impl(f))
}

/// Hilbert function of the apolar ideal of the form `g`.
#[wasm_bindgen]
pub fn apolar_profile(g: &str) -> String {
    respond(apolar_impl(g))
}

/// Integer minimal polynomial of a decimal value ("x" or "re,im").
#[wasm_bindgen]
pub fn minimal_polynomial(value: &str, maxdeg: usize, digits: usize) -> String {
    respond(minpoly_impl(value, maxdeg, digits))
}

/// The Minkowski bound M(n) as a decimal string.
#[wasm_bindgen]
pub fn minkowski(n: u32) -> String {
    minkowski_bound(n as u64).to_string()
}
