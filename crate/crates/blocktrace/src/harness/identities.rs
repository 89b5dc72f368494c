//! Exact algebraic identities checked as residuals: these hold for
//! arbitrary inputs, so any residual above roundoff is an implementation
//! bug, not a counterexample.

use crate::blockops::BlockMatrix;
use crate::decomp;
use crate::matrix::{Complex64, ComplexMatrix};
use crate::randgen::{derive_trial_seed, GenClass, GenSpec};
use crate::spectral::{compound_power, symmetric_power, POWER_DIM_CAP};

use super::registry::{embed_tr1, pauli_average, phi_commutation_residual};

/// Max-norm residuals, each divided by `max(1, magnitude of the quantities
/// compared)`. Auxiliary random matrices derive deterministically from the
/// input's bit content, so the suite is a pure function of `h`.
pub fn identity_suite(h: &BlockMatrix) -> Vec<(&'static str, f64)> {
    let mut out = Vec::new();
    let seed = content_seed(h);
    let aux = |salt: u64, n: usize, k: usize| -> ComplexMatrix {
        GenSpec::new(GenClass::General, n, k, derive_trial_seed(seed, salt))
            .generate()
            .expect("dimensions already validated")
            .mat
    };

    // Conjugation averaging over the shift/clock unitaries.
    {
        let avg = pauli_average(h).expect("dimensions preserved");
        let target = embed_tr1(h).expect("dimensions preserved");
        let residual = avg.sub(&target).expect("same dim").max_norm();
        out.push(("pauli-averaging", rel(residual, target.max_norm())));
    }

    // The trace-embedding maps commute in either order.
    {
        let (residual, scale) = phi_commutation_residual(h).expect("same dim");
        out.push(("phi-commutation", rel(residual, scale)));
    }

    // Reshuffling exchanges the roles of the two partial traces.
    {
        let lhs = h.reshuffle().partial_trace_2();
        let rhs = h.partial_trace_1();
        let residual = lhs.sub(&rhs).expect("same dim").max_norm();
        out.push(("reshuffle-partial-trace", rel(residual, rhs.max_norm())));
    }

    // Reshuffle equals conjugation by the perfect-shuffle permutation.
    {
        let perm = BlockMatrix::shuffle_permutation(h.n, h.k);
        let d = h.dim();
        let mut s = ComplexMatrix::zeros(d);
        for (from, &to) in perm.iter().enumerate() {
            s.set(to, from, Complex64::new(1.0, 0.0));
        }
        let conj = s
            .matmul(&h.mat)
            .and_then(|m| m.matmul(&s.transpose()))
            .expect("same dim");
        let residual = conj.sub(&h.reshuffle().mat).expect("same dim").max_norm();
        out.push(("reshuffle-similarity", rel(residual, h.mat.max_norm())));
    }

    // Partial traces are the adjoints of the identity embeddings.
    {
        let x = aux(1, 1, h.k);
        let y = aux(2, 1, h.n);
        let lhs1 = ComplexMatrix::identity(h.n)
            .kron(&x)
            .and_then(|e| e.hs_inner(&h.mat))
            .expect("same dim");
        let rhs1 = x.hs_inner(&h.partial_trace_1()).expect("same dim");
        let lhs2 = y
            .kron(&ComplexMatrix::identity(h.k))
            .and_then(|e| e.hs_inner(&h.mat))
            .expect("same dim");
        let rhs2 = y.hs_inner(&h.partial_trace_2()).expect("same dim");
        let residual = (lhs1 - rhs1).norm().max((lhs2 - rhs2).norm());
        let scale = lhs1.norm().max(lhs2.norm());
        out.push(("adjoint-embedding", rel(residual, scale)));
    }

    // det(X (x) Y) = det(X)^k det(Y)^n, exercised on the two partial traces.
    {
        let x = h.partial_trace_2();
        let y = h.partial_trace_1();
        let big = x.kron(&y).expect("within cap");
        let got = decomp::det(&big).value;
        let dx = decomp::det(&x).value;
        let dy = decomp::det(&y).value;
        let expect = dx.powu(h.k as u32) * dy.powu(h.n as u32);
        out.push((
            "kron-det-factorization",
            rel((got - expect).norm(), got.norm().max(expect.norm())),
        ));
    }

    // tr of a tensor square is the squared trace.
    {
        let big = h.mat.kron(&h.mat).expect("within cap");
        let got = big.trace();
        let expect = h.mat.trace() * h.mat.trace();
        out.push((
            "tensor-trace-power",
            rel((got - expect).norm(), expect.norm()),
        ));
    }

    // Multiplicativity of the three power constructions, against a second
    // deterministic random matrix of the same shape.
    {
        let partner = aux(3, h.n, h.k);
        let product = h.mat.matmul(&partner).expect("same dim");

        let lhs = product.kron(&product).expect("within cap");
        let rhs = h
            .mat
            .kron(&h.mat)
            .and_then(|a| partner.kron(&partner).and_then(|b| a.matmul(&b)))
            .expect("within cap");
        out.push((
            "tensor-multiplicative",
            rel(
                lhs.sub(&rhs).expect("same dim").max_norm(),
                lhs.max_norm().max(rhs.max_norm()),
            ),
        ));

        let d = h.dim();
        if d >= 2 && d * (d - 1) / 2 <= POWER_DIM_CAP {
            let lhs = compound_power(&product, 2).expect("within cap");
            let rhs = compound_power(&h.mat, 2)
                .and_then(|a| compound_power(&partner, 2).and_then(|b| a.matmul(&b)))
                .expect("within cap");
            out.push((
                "compound-multiplicative",
                rel(
                    lhs.sub(&rhs).expect("same dim").max_norm(),
                    lhs.max_norm().max(rhs.max_norm()),
                ),
            ));
        }
        if d * (d + 1) / 2 <= POWER_DIM_CAP {
            let lhs = symmetric_power(&product, 2).expect("within cap");
            let rhs = symmetric_power(&h.mat, 2)
                .and_then(|a| symmetric_power(&partner, 2).and_then(|b| a.matmul(&b)))
                .expect("within cap");
            out.push((
                "symmetric-multiplicative",
                rel(
                    lhs.sub(&rhs).expect("same dim").max_norm(),
                    lhs.max_norm().max(rhs.max_norm()),
                ),
            ));
        }
    }

    out
}

fn rel(residual: f64, scale: f64) -> f64 {
    residual / scale.max(1.0)
}

fn content_seed(h: &BlockMatrix) -> u64 {
    let mut seed = (h.n as u64) << 32 | h.k as u64;
    for z in h.mat.entries() {
        seed = derive_trial_seed(seed, z.re.to_bits());
        seed = derive_trial_seed(seed, z.im.to_bits());
    }
    seed
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::blockops::tests::random_block;
    use crate::matrix::ComplexMatrix;

    #[test]
    fn identity_matrix_gives_zero_residuals() {
        let h = BlockMatrix::new(2, 2, ComplexMatrix::identity(4)).unwrap();
        for (name, residual) in identity_suite(&h) {
            assert_eq!(residual, 0.0, "{name}");
        }
    }

    #[test]
    fn random_inputs_stay_at_roundoff() {
        for seed in 0..20u64 {
            let h = random_block(GenClass::General, 3, 2, seed);
            for (name, residual) in identity_suite(&h) {
                assert!(residual <= 1e-10, "{name} at seed {seed}: {residual:.3e}");
            }
        }
    }

    #[test]
    fn suite_is_deterministic() {
        let h = random_block(GenClass::General, 2, 3, 9);
        let a = identity_suite(&h);
        let b = identity_suite(&h);
        assert_eq!(a, b);
    }

    #[test]
    fn pauli_identity_for_hand_built_two_dimensional_case() {
        // n = 2: shift [[0,1],[1,0]], clock diag(-1, 1); averaging any H
        // over their words reproduces I (x) tr1 H exactly up to roundoff.
        let h = random_block(GenClass::General, 2, 2, 31);
        let avg = pauli_average(&h).unwrap();
        let target = embed_tr1(&h).unwrap();
        assert!(avg.sub(&target).unwrap().max_norm() <= 1e-13 * target.max_norm().max(1.0));
    }
}
