use nalgebra::{SMatrix, SVector};
use num_complex::Complex64;

use super::density::{vec_index, LEVELS};
use super::{DensityMatrix, ModelError, TqdParams};

pub const DIM: usize = LEVELS * LEVELS;

pub type Operator = SMatrix<Complex64, DIM, DIM>;
pub type StateVector = SVector<Complex64, DIM>;

/// Row replaced by the trace condition: the ρ₁₁ equation.
pub const CONSTRAINT_ROW: usize = vec_index(1, 1);

/// Constrained linear system whose solution is the steady state.
#[derive(Debug, Clone, PartialEq)]
pub struct LiouvillianSystem {
    /// Generator L with d(vec ρ)/dt = L · vec ρ, before substitution.
    pub generator: Operator,
    /// `generator` with `constraint_row` replaced by the trace functional.
    pub matrix: Operator,
    pub constraint_row: usize,
    /// Zero except for a one in `constraint_row`.
    pub rhs: StateVector,
    pub params: TqdParams,
}

impl LiouvillianSystem {
    /// L · vec ρ, reshaped.
    pub fn apply(&self, rho: &DensityMatrix) -> DensityMatrix {
        let v = StateVector::from_iterator(rho.to_vector());
        let out = self.generator * v;
        DensityMatrix::from_vector(out.as_slice())
    }
}

/// One term `coeff · ρ_from` of an explicit equation.
#[derive(Clone, Copy)]
struct Term {
    coeff: Complex64,
    from: (usize, usize),
}

fn t(coeff: Complex64, i: usize, j: usize) -> Term {
    Term { coeff, from: (i, j) }
}

/// The ten explicit equations as coefficient rows.
fn explicit_equations(p: &TqdParams) -> Vec<((usize, usize), Vec<Term>)> {
    let i = Complex64::I;
    let real = |x: f64| Complex64::new(x, 0.0);
    let g = p.pump_rate;
    let (ta, tb, oe, ob) = (p.tunneling_a, p.tunneling_b, p.rabi_e, p.rabi_b);
    let delta = p.detuning_p;
    let (w12, w23, w34) = (p.omega_12, p.omega_23, p.omega_34);
    let k = p.coherence_decay();

    vec![
        (
            (1, 1),
            vec![
                t(real(p.gamma_21 + g), 2, 2),
                t(real(p.gamma_31), 3, 3),
                t(real(p.gamma_41), 4, 4),
                t(i * oe, 2, 1),
                t(-i * oe.conj(), 1, 2),
                t(real(-g), 1, 1),
            ],
        ),
        (
            (2, 2),
            vec![
                t(real(-(p.gamma_21 + g)), 2, 2),
                t(-i * oe, 2, 1),
                t(i * oe.conj(), 1, 2),
                t(i * ta.conj(), 3, 2),
                t(-i * ta, 2, 3),
                t(real(g), 1, 1),
            ],
        ),
        (
            (3, 3),
            vec![
                t(real(-p.gamma_31), 3, 3),
                t(i * ta, 2, 3),
                t(-i * ta.conj(), 3, 2),
                t(-i * tb, 3, 4),
                t(i * tb.conj(), 4, 3),
            ],
        ),
        ((4, 4), vec![t(real(-p.gamma_41), 4, 4), t(i * tb, 3, 4), t(-i * tb.conj(), 4, 3)]),
        ((1, 2), vec![t(i * delta - k.rho12 - g, 1, 2), t(-i * oe, 1, 1), t(i * oe, 2, 2), t(-i * ta, 1, 3)]),
        (
            (1, 3),
            vec![
                t(i * (delta + w12) - k.rho13 - g / 2.0, 1, 3),
                t(i * ob, 2, 3),
                t(-i * ta.conj(), 1, 2),
                t(-i * tb, 1, 4),
            ],
        ),
        ((1, 4), vec![t(i * (delta + w12 + w23) - k.rho14 - g / 2.0, 1, 4), t(i * oe, 2, 4), t(-i * tb.conj(), 1, 3)]),
        (
            (3, 2),
            vec![
                t(-(i * w23 + k.rho32 + g / 2.0), 3, 2),
                t(-i * ta, 3, 3),
                t(i * ta, 2, 2),
                t(-i * ob, 3, 1),
                t(i * tb.conj(), 4, 2),
            ],
        ),
        (
            (4, 2),
            vec![t(-(i * (w23 + w34) + k.rho42 + g / 2.0), 4, 2), t(-i * ta, 4, 3), t(i * tb, 3, 2), t(-i * oe, 4, 1)],
        ),
        ((4, 3), vec![t(-(i * w34 + k.rho43), 4, 3), t(-i * tb, 4, 4), t(i * tb, 3, 3), t(-i * ta.conj(), 4, 2)]),
    ]
}

/// Assembles the generator of the equations of motion and the
/// trace-constrained steady-state system.
///
/// Each explicit coherence row for ρᵢⱼ also yields the ρⱼᵢ row by
/// conjugating every coefficient and transposing every source index.
pub fn build_liouvillian(params: &TqdParams) -> Result<LiouvillianSystem, ModelError> {
    params.validate()?;
    let mut generator = Operator::zeros();
    for ((i, j), terms) in explicit_equations(params) {
        for term in &terms {
            let (k, l) = term.from;
            generator[(vec_index(i, j), vec_index(k, l))] += term.coeff;
            if i != j {
                generator[(vec_index(j, i), vec_index(l, k))] += term.coeff.conj();
            }
        }
    }

    let mut matrix = generator;
    for col in 0..DIM {
        matrix[(CONSTRAINT_ROW, col)] = Complex64::ZERO;
    }
    for level in 1..=LEVELS {
        matrix[(CONSTRAINT_ROW, vec_index(level, level))] = Complex64::ONE;
    }
    let mut rhs = StateVector::zeros();
    rhs[CONSTRAINT_ROW] = Complex64::ONE;

    Ok(LiouvillianSystem { generator, matrix, constraint_row: CONSTRAINT_ROW, rhs, params: *params })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::rhs_derivative;

    #[test]
    fn decoupled_generator_is_block_diagonal() {
        let sys = build_liouvillian(&TqdParams::decoupled()).unwrap();
        let pops: Vec<usize> = (1..=4).map(|k| vec_index(k, k)).collect();
        for r in 0..DIM {
            for c in 0..DIM {
                let cross = pops.contains(&r) != pops.contains(&c);
                if cross {
                    assert_eq!(sys.generator[(r, c)], Complex64::ZERO, "({r},{c})");
                }
                // coherences do not mix with one another either
                if !pops.contains(&r) && !pops.contains(&c) && r != c {
                    assert_eq!(sys.generator[(r, c)], Complex64::ZERO, "({r},{c})");
                }
            }
        }
        let ground = StateVector::from_iterator(DensityMatrix::ground().to_vector());
        assert_eq!((sys.generator * ground).norm(), 0.0);
    }

    #[test]
    fn pump_only_population_row() {
        let mut p = TqdParams::decoupled();
        p.pump_rate = 0.2;
        let sys = build_liouvillian(&p).unwrap();
        let row = vec_index(2, 2);
        assert_eq!(sys.generator[(row, vec_index(1, 1))], Complex64::new(0.2, 0.0));
        assert_eq!(sys.generator[(row, vec_index(2, 2))], Complex64::new(-1.2, 0.0));
    }

    #[test]
    fn population_rows_sum_to_zero() {
        let mut p = TqdParams::baseline(&Default::default());
        p.detuning_p = 0.7;
        let sys = build_liouvillian(&p).unwrap();
        for c in 0..DIM {
            let s: Complex64 = (1..=4).map(|k| sys.generator[(vec_index(k, k), c)]).sum();
            assert!(s.norm() < 1e-15, "column {c}: {s}");
        }
    }

    #[test]
    fn constraint_row_is_trace() {
        let sys = build_liouvillian(&TqdParams::decoupled()).unwrap();
        for c in 0..DIM {
            let expected = if [0, 5, 10, 15].contains(&c) { Complex64::ONE } else { Complex64::ZERO };
            assert_eq!(sys.matrix[(0, c)], expected);
        }
        assert_eq!(sys.rhs[0], Complex64::ONE);
        assert_eq!(sys.rhs.iter().filter(|z| **z != Complex64::ZERO).count(), 1);
    }

    #[test]
    fn apply_matches_equations_on_basis_states() {
        let p = TqdParams::baseline(&Default::default()).with_detuning(-0.4);
        let sys = build_liouvillian(&p).unwrap();
        for k in 0..DIM {
            let mut v = [Complex64::ZERO; DIM];
            v[k] = Complex64::ONE;
            let rho = DensityMatrix::from_vector(&v);
            let diff = sys.apply(&rho).max_abs_diff(&rhs_derivative(&p, &rho));
            assert!(diff < 1e-15, "basis {k}: {diff}");
        }
    }

    #[test]
    fn invalid_params_are_rejected() {
        let mut p = TqdParams::decoupled();
        p.gamma_31 = -1.0;
        assert!(matches!(build_liouvillian(&p), Err(ModelError::InvalidParameter { .. })));
    }
}
