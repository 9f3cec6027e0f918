//! The 16-operator subspace basis, the three control involutions and the
//! commutation bookkeeping that predicts which basis operators each nested
//! UDD layer removes.
//!
//! Basis order is |00>, |01>, |10>, |11> (indices 0..3). The protected
//! subspace is span{|01>, |10>}.

use serde::{Deserialize, Serialize};

use crate::qlinalg::ComplexMatrix;
use crate::{C64, Error, Result};

const COMMUTATION_TOL: f64 = 1e-10;

fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

/// |i><j| on the two-qubit space.
fn ketbra(i: usize, j: usize) -> ComplexMatrix {
    let mut m = ComplexMatrix::zeros(4);
    m.set(i, j, c(1.0, 0.0));
    m
}

/// The 16 basis operators of the subspace-preserving decomposition,
/// indexed 1..=16.
#[derive(Debug, Clone)]
pub struct YBasis {
    ops: Vec<ComplexMatrix>,
}

/// Construct the full 16-operator basis.
pub fn build_y_basis() -> YBasis {
    // Indices: 00 -> 0, 01 -> 1, 10 -> 2, 11 -> 3.
    let ops = vec![
        ComplexMatrix::identity(4),                        // Y1
        ketbra(1, 1).add(&ketbra(2, 2)),                   // Y2
        ketbra(0, 3),                                      // Y3
        ketbra(0, 0).sub(&ketbra(3, 3)),                   // Y4
        ketbra(3, 0),                                      // Y5
        ketbra(1, 1).sub(&ketbra(2, 2)),                   // Y6
        ketbra(2, 0),                                      // Y7
        ketbra(0, 2),                                      // Y8
        ketbra(2, 3),                                      // Y9
        ketbra(3, 2),                                      // Y10
        ketbra(1, 0),                                      // Y11
        ketbra(0, 1),                                      // Y12
        ketbra(1, 3),                                      // Y13
        ketbra(3, 1),                                      // Y14
        ketbra(1, 2).add(&ketbra(2, 1)),                   // Y15
        ketbra(2, 1).sub(&ketbra(1, 2)).scale(c(0., -1.)), // Y16 = -i(|10><01| - |01><10|)
    ];
    YBasis { ops }
}

impl YBasis {
    /// 1-based accessor matching the conventional numbering.
    pub fn op(&self, index: usize) -> &ComplexMatrix {
        assert!((1..=16).contains(&index), "Y index must be 1..=16");
        &self.ops[index - 1]
    }

    pub fn all(&self) -> &[ComplexMatrix] {
        &self.ops
    }
}

/// Identifier for the three layer control operators.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ControlOpId {
    X0,
    X1,
    Xphi,
}

impl ControlOpId {
    pub const ALL: [ControlOpId; 3] = [ControlOpId::X0, ControlOpId::X1, ControlOpId::Xphi];

    pub fn label(self) -> &'static str {
        match self {
            ControlOpId::X0 => "X0",
            ControlOpId::X1 => "X1",
            ControlOpId::Xphi => "Xphi",
        }
    }
}

impl std::fmt::Display for ControlOpId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.label())
    }
}

/// Hermitian unitary involution used as a layer pulse.
#[derive(Debug, Clone)]
pub struct ControlOp {
    pub id: ControlOpId,
    pub matrix: ComplexMatrix,
}

/// Build a control operator:
/// X0 = I - 2|01><01|, X1 = I - 2|10><10|,
/// Xphi = I - (|01>+|10>)(<01|+<10|).
pub fn build_control(id: ControlOpId) -> ControlOp {
    let matrix = match id {
        ControlOpId::X0 => ComplexMatrix::from_diag_real(&[1.0, -1.0, 1.0, 1.0]),
        ControlOpId::X1 => ComplexMatrix::from_diag_real(&[1.0, 1.0, -1.0, 1.0]),
        ControlOpId::Xphi => {
            let outer = ketbra(1, 1)
                .add(&ketbra(1, 2))
                .add(&ketbra(2, 1))
                .add(&ketbra(2, 2));
            ComplexMatrix::identity(4).sub(&outer)
        }
    };
    debug_assert!(matrix.hermiticity_deviation() < 1e-15);
    debug_assert!(
        matrix
            .matmul(&matrix)
            .max_abs_diff(&ComplexMatrix::identity(4))
            < 1e-15
    );
    ControlOp { id, matrix }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CommutationClass {
    Commute,
    Anticommute,
    Neither,
}

impl std::fmt::Display for CommutationClass {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            CommutationClass::Commute => "C",
            CommutationClass::Anticommute => "A",
            CommutationClass::Neither => "N",
        })
    }
}

/// Classify [x, y] / {x, y} at tolerance 1e-10 on the max norm. The
/// commutator test runs first so the zero operator reports Commute.
pub fn classify_commutation(x: &ComplexMatrix, y: &ComplexMatrix) -> Result<CommutationClass> {
    if x.dim() != y.dim() {
        return Err(Error::DimMismatch {
            left: x.dim(),
            right: y.dim(),
        });
    }
    let xy = x.matmul(y);
    let yx = y.matmul(x);
    if xy.max_abs_diff(&yx) <= COMMUTATION_TOL {
        return Ok(CommutationClass::Commute);
    }
    if xy.add(&yx).max_abs() <= COMMUTATION_TOL {
        return Ok(CommutationClass::Anticommute);
    }
    Ok(CommutationClass::Neither)
}

/// Indices (1-based) of the Y operators surviving after the given layer:
/// layer 1 keeps Y1..Y10, layer 2 keeps Y1..Y6, layer 3 keeps Y1..Y5.
pub fn predicted_surviving_set(layer: usize) -> Result<Vec<usize>> {
    let last = match layer {
        1 => 10,
        2 => 6,
        3 => 5,
        _ => {
            return Err(Error::InvalidOrder {
                got: layer,
                reason: "NUDD layer must be 1, 2 or 3",
            })
        }
    };
    Ok((1..=last).collect())
}

/// Full 3x16 classification of each control operator against the Y basis.
pub fn commutation_table(
    basis: &YBasis,
    controls: &[ControlOp],
) -> Result<Vec<Vec<CommutationClass>>> {
    controls
        .iter()
        .map(|ctrl| {
            basis
                .all()
                .iter()
                .map(|y| classify_commutation(&ctrl.matrix, y))
                .collect()
        })
        .collect()
}
