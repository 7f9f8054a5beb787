use nalgebra::DMatrix;
use num_complex::Complex64;

use super::SystemModel;
use crate::error::{domain, Result};

pub type CMatrix = DMatrix<Complex64>;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Index of a product basis state. `levels[j]` is 0 for |r₁⟩ and 1 for |r₂⟩.
pub fn basis_index(levels: &[usize], photons: usize, fock_cutoff: usize) -> usize {
    let atoms = levels.iter().fold(0, |acc, &l| acc * 2 + l);
    atoms * fock_cutoff + photons
}

fn embed(atom_ops: &[CMatrix], mode_op: &CMatrix) -> CMatrix {
    let mut out = CMatrix::from_element(1, 1, ONE);
    for op in atom_ops {
        out = out.kronecker(op);
    }
    out.kronecker(mode_op)
}

fn identity(n: usize) -> CMatrix {
    CMatrix::identity(n, n)
}

fn single_atom(op: CMatrix, atom: usize, atom_count: usize, fock_cutoff: usize) -> CMatrix {
    let ops: Vec<CMatrix> = (0..atom_count)
        .map(|j| if j == atom { op.clone() } else { identity(2) })
        .collect();
    embed(&ops, &identity(fock_cutoff))
}

/// Mode annihilation operator â on the full space.
pub fn annihilation(atom_count: usize, fock_cutoff: usize) -> CMatrix {
    let mut a = CMatrix::zeros(fock_cutoff, fock_cutoff);
    for n in 1..fock_cutoff {
        a[(n - 1, n)] = Complex64::new((n as f64).sqrt(), 0.0);
    }
    let atoms = vec![identity(2); atom_count];
    embed(&atoms, &a)
}

/// σ⁻ = |r₁⟩⟨r₂| acting on atom `atom`.
pub fn sigma_minus(atom: usize, atom_count: usize, fock_cutoff: usize) -> CMatrix {
    let mut s = CMatrix::zeros(2, 2);
    s[(0, 1)] = ONE;
    single_atom(s, atom, atom_count, fock_cutoff)
}

/// σ_z = |r₂⟩⟨r₂| − |r₁⟩⟨r₁| acting on atom `atom`.
pub fn sigma_z(atom: usize, atom_count: usize, fock_cutoff: usize) -> CMatrix {
    let mut s = CMatrix::zeros(2, 2);
    s[(0, 0)] = -ONE;
    s[(1, 1)] = ONE;
    single_atom(s, atom, atom_count, fock_cutoff)
}

/// N_exc = Σ_j σ⁺_j σ⁻_j + â†â.
pub fn excitation_number(atom_count: usize, fock_cutoff: usize) -> CMatrix {
    let a = annihilation(atom_count, fock_cutoff);
    let mut n = a.adjoint() * &a;
    for j in 0..atom_count {
        let s = sigma_minus(j, atom_count, fock_cutoff);
        n += s.adjoint() * s;
    }
    n
}

/// H/ħ = Σ_j [Δ_j σ⁺_j σ⁻_j + g_j (σ⁺_j â + σ⁻_j â†)] on the truncated space.
pub fn build_hamiltonian(model: &SystemModel) -> Result<CMatrix> {
    model.validate()?;
    let (k, n_max) = (model.atom_count(), model.fock_cutoff);
    if n_max < 2 {
        return Err(domain("fock_cutoff must be >= 2"));
    }
    let a = annihilation(k, n_max);
    let a_dag = a.adjoint();
    let mut h = CMatrix::zeros(model.dim(), model.dim());
    for (j, atom) in model.atoms.iter().enumerate() {
        let lower = sigma_minus(j, k, n_max);
        let raise = lower.adjoint();
        h += (&raise * &lower) * Complex64::new(atom.detuning, 0.0);
        let exchange = &raise * &a + &lower * &a_dag;
        h += exchange * Complex64::new(atom.coupling, 0.0);
    }
    Ok(h)
}

/// Operator stored as its non-zero entries.
#[derive(Debug, Clone, PartialEq)]
pub struct SparseOperator {
    pub dim: usize,
    pub entries: Vec<(usize, usize, Complex64)>,
}

impl SparseOperator {
    pub fn from_dense(m: &CMatrix) -> Self {
        let mut entries = Vec::new();
        for c in 0..m.ncols() {
            for r in 0..m.nrows() {
                let v = m[(r, c)];
                if v != ZERO {
                    entries.push((r, c, v));
                }
            }
        }
        SparseOperator {
            dim: m.nrows(),
            entries,
        }
    }

    pub fn scaled(mut self, factor: f64) -> Self {
        for e in &mut self.entries {
            e.2 *= factor;
        }
        self
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynamics::AtomChannel;
    use nalgebra::SymmetricEigen;

    fn sorted_eigenvalues(m: &CMatrix) -> Vec<f64> {
        let mut ev: Vec<f64> = SymmetricEigen::new(m.clone())
            .eigenvalues
            .iter()
            .copied()
            .collect();
        ev.sort_by(|a, b| a.partial_cmp(b).unwrap());
        ev
    }

    #[test]
    fn index_layout() {
        assert_eq!(basis_index(&[0], 0, 4), 0);
        assert_eq!(basis_index(&[1], 2, 4), 6);
        assert_eq!(basis_index(&[1, 0], 1, 3), 7);
        assert_eq!(basis_index(&[0, 1], 0, 3), 3);
    }

    #[test]
    fn single_atom_doublet() {
        let g = 2.5;
        let model = SystemModel::resonant(1, g).unwrap().with_fock_cutoff(2);
        let h = build_hamiltonian(&model).unwrap();
        // Single-excitation block spanned by |r₂,0⟩ and |r₁,1⟩.
        let (i, j) = (basis_index(&[1], 0, 2), basis_index(&[0], 1, 2));
        let block = CMatrix::from_fn(2, 2, |r, c| h[([i, j][r], [i, j][c])]);
        let ev = sorted_eigenvalues(&block);
        assert!((ev[0] + g).abs() < 1e-14 && (ev[1] - g).abs() < 1e-14);
        assert_eq!(h, h.adjoint());
    }

    #[test]
    fn zero_coupling_is_diagonal() {
        let mut model = SystemModel::resonant(2, 0.0).unwrap();
        model.atoms[0].detuning = 3.0;
        let h = build_hamiltonian(&model).unwrap();
        for r in 0..h.nrows() {
            for c in 0..h.ncols() {
                if r != c {
                    assert_eq!(h[(r, c)], ZERO);
                }
            }
        }
    }

    #[test]
    fn two_atom_single_excitation_spectrum() {
        let g = 1.7;
        let model = SystemModel::new(vec![AtomChannel::resonant(g); 2], 3, 0.0).unwrap();
        let h = build_hamiltonian(&model).unwrap();
        let idx = [
            basis_index(&[1, 0], 0, 3),
            basis_index(&[0, 1], 0, 3),
            basis_index(&[0, 0], 1, 3),
        ];
        let block = CMatrix::from_fn(3, 3, |r, c| h[(idx[r], idx[c])]);
        let ev = sorted_eigenvalues(&block);
        let s = 2f64.sqrt() * g;
        for (got, want) in ev.iter().zip([-s, 0.0, s]) {
            assert!((got - want).abs() < 1e-13, "{got} vs {want}");
        }
    }

    #[test]
    fn excitation_number_commutes_with_hamiltonian() {
        let mut model = SystemModel::resonant(2, 1.3).unwrap().with_fock_cutoff(5);
        model.atoms[1].coupling = 0.4;
        model.atoms[0].detuning = -0.7;
        let h = build_hamiltonian(&model).unwrap();
        let n = excitation_number(2, 5);
        let comm = &h * &n - &n * &h;
        assert!(comm.norm() < 1e-12);
    }

    #[test]
    fn sparse_roundtrip() {
        let a = annihilation(1, 4);
        let sp = SparseOperator::from_dense(&a);
        assert_eq!(sp.entries.len(), 6);
        let mut back = CMatrix::zeros(8, 8);
        for &(r, c, v) in &sp.entries {
            back[(r, c)] = v;
        }
        assert_eq!(back, a);
    }
}
