use num_complex::Complex64;

use super::{DensityMatrix, TqdParams};

const I: Complex64 = Complex64::new(0.0, 1.0);

/// dρ/dt for the four-level dot molecule, evaluated term by term.
///
/// The four population equations and the six coherences ρ₁₂, ρ₁₃, ρ₁₄, ρ₃₂,
/// ρ₄₂, ρ₄₃ are written out explicitly. The remaining six are their complex
/// conjugates, written out with ρⱼᵢ in place of conj(ρᵢⱼ) so the map stays
/// complex-linear on arbitrary (not only Hermitian) inputs.
///
/// This path shares no code with [`build_liouvillian`](super::build_liouvillian)
/// and serves as its cross-check.
pub fn rhs_derivative(params: &TqdParams, rho: &DensityMatrix) -> DensityMatrix {
    let r = |i, j| rho.get(i, j);
    let gain = params.pump_rate;
    let half_gain = gain / 2.0;
    let (ta, tb) = (params.tunneling_a, params.tunneling_b);
    let (oe, ob) = (params.rabi_e, params.rabi_b);
    let (delta, w12, w23, w34) = (params.detuning_p, params.omega_12, params.omega_23, params.omega_34);
    let (g21, g31, g41) = (params.gamma_21, params.gamma_31, params.gamma_41);
    let decay = params.coherence_decay();

    let mut d = DensityMatrix::zeros();

    d.set(
        1,
        1,
        (g21 + gain) * r(2, 2) + g31 * r(3, 3) + g41 * r(4, 4) + I * (oe * r(2, 1) - oe.conj() * r(1, 2))
            - gain * r(1, 1),
    );
    d.set(
        2,
        2,
        -(g21 + gain) * r(2, 2) - I * (oe * r(2, 1) - oe.conj() * r(1, 2))
            + I * (ta.conj() * r(3, 2) - ta * r(2, 3))
            + gain * r(1, 1),
    );
    d.set(3, 3, -g31 * r(3, 3) + I * (ta * r(2, 3) - ta.conj() * r(3, 2)) - I * (tb * r(3, 4) - tb.conj() * r(4, 3)));
    d.set(4, 4, -g41 * r(4, 4) + I * (tb * r(3, 4) - tb.conj() * r(4, 3)));

    d.set(1, 2, (I * delta - decay.rho12 - gain) * r(1, 2) - I * oe * (r(1, 1) - r(2, 2)) - I * ta * r(1, 3));
    d.set(
        2,
        1,
        (-I * delta - decay.rho12 - gain) * r(2, 1) + I * oe.conj() * (r(1, 1) - r(2, 2)) + I * ta.conj() * r(3, 1),
    );

    d.set(
        1,
        3,
        (I * (delta + w12) - decay.rho13 - half_gain) * r(1, 3) + I * ob * r(2, 3)
            - I * (ta.conj() * r(1, 2) + tb * r(1, 4)),
    );
    d.set(
        3,
        1,
        (-I * (delta + w12) - decay.rho13 - half_gain) * r(3, 1) - I * ob.conj() * r(3, 2)
            + I * (ta * r(2, 1) + tb.conj() * r(4, 1)),
    );

    d.set(
        1,
        4,
        (I * (delta + w12 + w23) - decay.rho14 - half_gain) * r(1, 4) + I * oe * r(2, 4) - I * tb.conj() * r(1, 3),
    );
    d.set(
        4,
        1,
        (-I * (delta + w12 + w23) - decay.rho14 - half_gain) * r(4, 1) - I * oe.conj() * r(4, 2) + I * tb * r(3, 1),
    );

    d.set(
        3,
        2,
        -(I * w23 + decay.rho32 + half_gain) * r(3, 2) - I * ta * (r(3, 3) - r(2, 2)) - I * ob * r(3, 1)
            + I * tb.conj() * r(4, 2),
    );
    d.set(
        2,
        3,
        -(-I * w23 + decay.rho32 + half_gain) * r(2, 3) + I * ta.conj() * (r(3, 3) - r(2, 2)) + I * ob.conj() * r(1, 3)
            - I * tb * r(2, 4),
    );

    d.set(
        4,
        2,
        -(I * (w23 + w34) + decay.rho42 + half_gain) * r(4, 2) - I * (ta * r(4, 3) - tb * r(3, 2)) - I * oe * r(4, 1),
    );
    d.set(
        2,
        4,
        -(-I * (w23 + w34) + decay.rho42 + half_gain) * r(2, 4)
            + I * (ta.conj() * r(3, 4) - tb.conj() * r(2, 3))
            + I * oe.conj() * r(1, 4),
    );

    d.set(4, 3, -(I * w34 + decay.rho43) * r(4, 3) - I * tb * (r(4, 4) - r(3, 3)) - I * ta.conj() * r(4, 2));
    d.set(3, 4, -(-I * w34 + decay.rho43) * r(3, 4) + I * tb.conj() * (r(4, 4) - r(3, 3)) + I * ta * r(2, 4));

    d
}
