#![allow(dead_code)]

use num_complex::Complex64;
use proptest::prelude::*;
use tqd_lhm::cli::{load_config, Preset};
use tqd_lhm::model::{DensityMatrix, TqdParams};

/// Random Hermitian unit-trace matrix (not necessarily positive).
pub fn hermitian_state() -> impl Strategy<Value = DensityMatrix> {
    (prop::array::uniform4(0.0..1.0f64), prop::array::uniform12(-0.5..0.5f64)).prop_map(|(diag, off)| {
        let total: f64 = diag.iter().sum::<f64>() + 1e-3;
        let mut rho = DensityMatrix::zeros();
        for (k, d) in diag.iter().enumerate() {
            rho.set(k + 1, k + 1, Complex64::new((d + 2.5e-4) / total, 0.0));
        }
        let mut idx = 0;
        for i in 1..=4 {
            for j in (i + 1)..=4 {
                let z = Complex64::new(off[idx], off[idx + 1]);
                rho.set(i, j, z);
                rho.set(j, i, z.conj());
                idx += 2;
            }
        }
        rho
    })
}

/// Parameters in the ranges the figures use, with random decay and dephasing.
pub fn params() -> impl Strategy<Value = TqdParams> {
    (
        0.0..0.4f64,
        0.2..0.3f64,
        0.3..0.7f64,
        -3.0..3.0f64,
        0.01..0.1f64,
        0.0..0.5f64,
        prop::array::uniform3(0.05..2.5f64),
        prop::array::uniform6(0.0..0.2f64),
    )
        .prop_map(|(pump, ta, tb, delta, oe, ob, gammas, deph)| {
            let mut p = TqdParams::decoupled();
            p.pump_rate = pump;
            p.tunneling_a = ta.into();
            p.tunneling_b = tb.into();
            p.detuning_p = delta;
            p.rabi_e = oe.into();
            p.rabi_b = ob.into();
            p.gamma_21 = gammas[0];
            p.gamma_31 = gammas[1];
            p.gamma_41 = gammas[2];
            for (k, (i, j)) in tqd_lhm::model::Dephasing::PAIRS.into_iter().enumerate() {
                p.dephasing.set(i, j, deph[k]).unwrap();
            }
            p
        })
}

pub fn preset_params(preset: Preset) -> TqdParams {
    load_config(&format!("preset = {}", preset.name())).unwrap().params
}
