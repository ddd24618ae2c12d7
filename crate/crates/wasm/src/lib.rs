//! wasm-bindgen surface for the static demo page in `www/`.

use wasm_bindgen::prelude::*;

pub mod curves;

fn js_err(e: jaynes_core::Error) -> JsError {
    JsError::new(&e.to_string())
}

#[wasm_bindgen]
pub struct Series(curves::Curves);

#[wasm_bindgen]
impl Series {
    pub fn t(&self) -> Vec<f64> {
        self.0.t.clone()
    }
    pub fn n_c(&self) -> Vec<f64> {
        self.0.n_c.clone()
    }
    pub fn n_f(&self) -> Vec<f64> {
        self.0.n_f.clone()
    }
    pub fn n_a(&self) -> Vec<f64> {
        self.0.n_a.clone()
    }
    pub fn n_tot(&self) -> Vec<f64> {
        self.0.n_tot.clone()
    }
    pub fn coh_a(&self) -> Vec<f64> {
        self.0.coh_a.clone()
    }
}

/// Time series of one case (`"A"`..`"D"`).
#[wasm_bindgen]
pub fn simulate(case: &str, param: f64, t_max: f64, n_points: usize, layers: usize) -> Result<Series, JsError> {
    curves::scenario(case, param, t_max, n_points, layers)
        .map(Series)
        .map_err(js_err)
}

#[wasm_bindgen(js_name = cascadeProfile)]
pub fn cascade_profile(weights: Vec<f64>, layers: usize) -> Result<Vec<f64>, JsError> {
    curves::cascade_profile(&weights, layers).map_err(js_err)
}

#[wasm_bindgen(js_name = mixturePotential)]
pub fn mixture_potential(weights: Vec<f64>) -> Result<f64, JsError> {
    curves::mixture_potential(&weights).map_err(js_err)
}
