//! JSON interchange formats for the CLI: matrices with decimal-string
//! entries (arbitrary precision survives), lattice models, and Φ reports.

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::cyclo::CycloMultiplicities;
use crate::linalg::mat::Mat;
use crate::linalg::modular::ModMatrix;
use crate::model::{GaloisLatticeModel, RankData, TauMatrix};
use crate::IntMatrix;

/// {"rows": n, "cols": m, "entries": [["-12", "3"], ...]}
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct MatrixDto {
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<Vec<String>>,
}

impl MatrixDto {
    pub fn from_matrix(m: &IntMatrix) -> Self {
        MatrixDto {
            rows: m.rows(),
            cols: m.cols(),
            entries: (0..m.rows())
                .map(|i| (0..m.cols()).map(|j| m[(i, j)].to_string()).collect())
                .collect(),
        }
    }

    pub fn to_matrix(&self) -> Result<IntMatrix> {
        if self.entries.len() != self.rows || self.entries.iter().any(|row| row.len() != self.cols)
        {
            return Err(Error::Malformed(
                "entry grid does not match rows × cols".into(),
            ));
        }
        let mut data = Vec::with_capacity(self.rows * self.cols);
        for row in &self.entries {
            for cell in row {
                let v: BigInt = cell
                    .parse()
                    .map_err(|_| Error::Malformed(format!("bad integer {cell:?}")))?;
                data.push(v);
            }
        }
        Mat::from_vec(self.rows, self.cols, data)
    }
}

#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct RanksDto {
    pub t: u32,
    pub a: u32,
    pub u: u32,
    pub t_tilde: u32,
    pub a_tilde: u32,
}

/// Serialized lattice model. `mode` is "exact" or "finite"; finite models
/// carry their precision exponent in `N` and τ entries as residues.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ModelDto {
    pub l: u64,
    pub mode: String,
    #[serde(rename = "N", skip_serializing_if = "Option::is_none")]
    pub precision: Option<u32>,
    pub rank: usize,
    pub tau: MatrixDto,
    pub filtration: Vec<MatrixDto>,
    pub ranks: RanksDto,
    pub m_t: Vec<u32>,
    pub m_a: Vec<u32>,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub nonstandard: bool,
}

impl ModelDto {
    pub fn from_model(model: &GaloisLatticeModel) -> Self {
        let (mode, precision, tau) = match &model.tau {
            TauMatrix::Exact(t) => ("exact".to_string(), None, MatrixDto::from_matrix(t)),
            TauMatrix::Finite(t) => (
                "finite".to_string(),
                Some(t.prec()),
                MatrixDto::from_matrix(&t.to_int_matrix()),
            ),
        };
        ModelDto {
            l: model.l,
            mode,
            precision,
            rank: model.rank,
            tau,
            filtration: model
                .filtration
                .iter()
                .map(MatrixDto::from_matrix)
                .collect(),
            ranks: RanksDto {
                t: model.ranks.t,
                a: model.ranks.a,
                u: model.ranks.u,
                t_tilde: model.ranks.t_tilde,
                a_tilde: model.ranks.a_tilde,
            },
            m_t: model.m_t.as_slice().to_vec(),
            m_a: model.m_a.as_slice().to_vec(),
            nonstandard: model.nonstandard,
        }
    }

    pub fn to_model(&self) -> Result<GaloisLatticeModel> {
        let tau_int = self.tau.to_matrix()?;
        if tau_int.rows() != self.rank {
            return Err(Error::Malformed("declared rank does not match τ".into()));
        }
        let tau = match self.mode.as_str() {
            "exact" => TauMatrix::Exact(tau_int),
            "finite" => {
                let prec = self
                    .precision
                    .ok_or_else(|| Error::Malformed("finite mode requires N".into()))?;
                TauMatrix::Finite(ModMatrix::new(self.l, prec, tau_int)?)
            }
            other => return Err(Error::Malformed(format!("unknown mode {other:?}"))),
        };
        if self.filtration.len() != 4 {
            return Err(Error::Malformed(
                "filtration must have exactly 4 steps".into(),
            ));
        }
        let mut steps = self.filtration.iter().map(MatrixDto::to_matrix);
        let filtration = [
            steps.next().unwrap()?,
            steps.next().unwrap()?,
            steps.next().unwrap()?,
            steps.next().unwrap()?,
        ];
        GaloisLatticeModel::new(
            self.l,
            tau,
            filtration,
            RankData {
                t: self.ranks.t,
                a: self.ranks.a,
                u: self.ranks.u,
                t_tilde: self.ranks.t_tilde,
                a_tilde: self.ranks.a_tilde,
            },
            CycloMultiplicities::new(self.m_t.clone()),
            CycloMultiplicities::new(self.m_a.clone()),
            self.nonstandard,
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{compute_phi, model_example51, model_example54};

    #[test]
    fn matrix_round_trip() {
        let m: IntMatrix = Mat::from_rows(vec![
            vec![BigInt::from(-12), BigInt::from(3)],
            vec![BigInt::from(0), BigInt::from(1)],
        ])
        .unwrap();
        let dto = MatrixDto::from_matrix(&m);
        let text = serde_json::to_string(&dto).unwrap();
        assert!(text.contains("\"-12\""));
        let back: MatrixDto = serde_json::from_str(&text).unwrap();
        assert_eq!(back.to_matrix().unwrap(), m);
    }

    #[test]
    fn model_round_trip_exact() {
        let model = model_example51(&[2, 4], 2).unwrap();
        let dto = ModelDto::from_model(&model);
        let text = serde_json::to_string(&dto).unwrap();
        let back: ModelDto = serde_json::from_str(&text).unwrap();
        let model2 = back.to_model().unwrap();
        assert_eq!(compute_phi(&model).unwrap(), compute_phi(&model2).unwrap());
    }

    #[test]
    fn model_round_trip_finite() {
        let model = model_example54(2, 1, 1, 8).unwrap();
        let dto = ModelDto::from_model(&model);
        assert_eq!(dto.mode, "finite");
        assert_eq!(dto.precision, Some(8));
        let text = serde_json::to_string(&dto).unwrap();
        let back: ModelDto = serde_json::from_str(&text).unwrap();
        let model2 = back.to_model().unwrap();
        assert_eq!(compute_phi(&model2).unwrap().phi.parts(), &[3]);
    }

    #[test]
    fn malformed_models_rejected() {
        let model = model_example51(&[2], 2).unwrap();
        let mut dto = ModelDto::from_model(&model);
        dto.rank = 7;
        assert!(dto.to_model().is_err());
        let mut dto = ModelDto::from_model(&model);
        dto.mode = "fuzzy".into();
        assert!(dto.to_model().is_err());
        let mut dto = ModelDto::from_model(&model);
        dto.filtration.pop();
        assert!(dto.to_model().is_err());
    }
}
