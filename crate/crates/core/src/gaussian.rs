//! Joint Gaussian law of the model variables, with exact mutual-information
//! and linear-MMSE computations on top of it.
//!
//! Every closed-form rate and distortion elsewhere in the crate can be
//! cross-checked against this module: the joint covariance is assembled from
//! the defining linear combinations, so log-det mutual informations and
//! MMSE residuals here are an independent evaluation route.

use std::fmt;

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::params::{SchemeIIIParams, SchemeIParams, SystemParams};

/// Variable names of the model.
///
/// `X` channel input, `S` interference, `V` source, `E` quantization error,
/// `W`/`Wp` main and eavesdropper noise, `U` auxiliary codeword, `Y`/`Z`
/// received signals, `Vstar` quantized reconstruction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Label {
    X,
    S,
    V,
    E,
    W,
    Wp,
    U,
    Y,
    Z,
    Vstar,
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            Label::X => "X",
            Label::S => "S",
            Label::V => "V",
            Label::E => "E",
            Label::W => "W",
            Label::Wp => "W'",
            Label::U => "U",
            Label::Y => "Y",
            Label::Z => "Z",
            Label::Vstar => "V*",
        };
        f.write_str(name)
    }
}

/// Which auxiliary-variable construction the joint law should follow.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SchemeLaw {
    /// `U = X + alpha*S + k*V`: the analog source is embedded directly.
    SchemeI(SchemeIParams),
    /// `U = X + alpha*S + k*E` with `V = V* + E`: the quantization error is
    /// embedded and the reconstruction `V*` is a side observation.
    SchemeIII(SchemeIIIParams),
}

/// Labeled covariance matrix over scalar model variables.
#[derive(Debug, Clone)]
pub struct GaussianJoint {
    labels: Vec<Label>,
    cov: Matrix,
}

/// Builds the joint covariance of all model variables for the given scheme.
///
/// Base variables (X, S, V or V*/E, W, W') are pairwise independent; derived
/// variables (U, Y, Z, V) are their defining linear combinations, so every
/// covariance entry is a finite sum of base variances.
pub fn assemble_joint(params: &SystemParams, scheme: &SchemeLaw) -> GaussianJoint {
    // rows: coefficient of each model variable on the base variables
    let (labels, base_vars, rows): (Vec<Label>, Vec<f64>, Vec<Vec<f64>>) = match scheme {
        SchemeLaw::SchemeI(sp) => {
            let base = vec![params.p, params.q, params.sigma_v2, params.n1, params.n2];
            let labels = vec![
                Label::X,
                Label::S,
                Label::V,
                Label::W,
                Label::Wp,
                Label::U,
                Label::Y,
                Label::Z,
            ];
            // base order: X, S, V, W, W'
            let rows = vec![
                vec![1.0, 0.0, 0.0, 0.0, 0.0],
                vec![0.0, 1.0, 0.0, 0.0, 0.0],
                vec![0.0, 0.0, 1.0, 0.0, 0.0],
                vec![0.0, 0.0, 0.0, 1.0, 0.0],
                vec![0.0, 0.0, 0.0, 0.0, 1.0],
                vec![1.0, sp.alpha, sp.k, 0.0, 0.0],
                vec![1.0, 1.0, 0.0, 1.0, 0.0],
                vec![1.0, 1.0, 0.0, 0.0, 1.0],
            ];
            (labels, base, rows)
        }
        SchemeLaw::SchemeIII(sp) => {
            let sigma_e2 = sp.sigma_e2(params.sigma_v2);
            let base = vec![
                params.p,
                params.q,
                params.sigma_v2 - sigma_e2,
                sigma_e2,
                params.n1,
                params.n2,
            ];
            let labels = vec![
                Label::X,
                Label::S,
                Label::Vstar,
                Label::E,
                Label::V,
                Label::W,
                Label::Wp,
                Label::U,
                Label::Y,
                Label::Z,
            ];
            // base order: X, S, V*, E, W, W'
            let rows = vec![
                vec![1.0, 0.0, 0.0, 0.0, 0.0, 0.0],
                vec![0.0, 1.0, 0.0, 0.0, 0.0, 0.0],
                vec![0.0, 0.0, 1.0, 0.0, 0.0, 0.0],
                vec![0.0, 0.0, 0.0, 1.0, 0.0, 0.0],
                vec![0.0, 0.0, 1.0, 1.0, 0.0, 0.0],
                vec![0.0, 0.0, 0.0, 0.0, 1.0, 0.0],
                vec![0.0, 0.0, 0.0, 0.0, 0.0, 1.0],
                vec![1.0, sp.alpha, 0.0, sp.k, 0.0, 0.0],
                vec![1.0, 1.0, 0.0, 0.0, 1.0, 0.0],
                vec![1.0, 1.0, 0.0, 0.0, 0.0, 1.0],
            ];
            (labels, base, rows)
        }
    };

    let n = labels.len();
    let mut cov = Matrix::zeros(n);
    for i in 0..n {
        for j in i..n {
            let mut acc = 0.0;
            for (b, var) in base_vars.iter().enumerate() {
                acc += rows[i][b] * rows[j][b] * var;
            }
            cov.set(i, j, acc);
            cov.set(j, i, acc);
        }
    }
    GaussianJoint { labels, cov }
}

impl GaussianJoint {
    pub fn labels(&self) -> &[Label] {
        &self.labels
    }

    fn index_of(&self, label: Label) -> Result<usize> {
        self.labels
            .iter()
            .position(|&l| l == label)
            .ok_or_else(|| Error::UnknownLabel(label.to_string()))
    }

    /// Covariance between two variables of the law.
    pub fn covariance(&self, a: Label, b: Label) -> Result<f64> {
        Ok(self.cov.get(self.index_of(a)?, self.index_of(b)?))
    }

    pub fn variance(&self, a: Label) -> Result<f64> {
        self.covariance(a, a)
    }

    /// Covariance submatrix for the given variables, in the given order.
    pub fn sub_cov(&self, labels: &[Label]) -> Result<Matrix> {
        let idx: Vec<usize> = labels
            .iter()
            .map(|&l| self.index_of(l))
            .collect::<Result<_>>()?;
        let mut sub = Matrix::zeros(idx.len());
        for (i, &a) in idx.iter().enumerate() {
            for (j, &b) in idx.iter().enumerate() {
                sub.set(i, j, self.cov.get(a, b));
            }
        }
        Ok(sub)
    }

    /// Validates symmetry (1e-12) and positive semidefiniteness via leading
    /// principal minors (>= -1e-9, relative to the Hadamard bound of the
    /// block: the law is degenerate by construction, so minors involving
    /// derived variables are exact zeros that round to +-eps times the
    /// diagonal product).
    pub fn check_psd(&self) -> Result<()> {
        let defect = self.cov.symmetry_defect();
        if defect > 1e-12 {
            return Err(Error::SingularCovariance {
                context: format!("covariance asymmetric by {defect}"),
            });
        }
        for k in 1..=self.cov.size() {
            let minor = self.cov.leading_minor(k);
            let scale: f64 = (0..k).map(|i| self.cov.get(i, i)).product();
            if minor < -1e-9 * scale.max(1.0) {
                return Err(Error::SingularCovariance {
                    context: format!("leading principal minor {k} is {minor}"),
                });
            }
        }
        Ok(())
    }
}

fn check_groups(joint: &GaussianJoint, group_a: &[Label], group_b: &[Label]) -> Result<()> {
    if group_a.is_empty() || group_b.is_empty() {
        return Err(Error::InvalidInput(
            "mutual information groups must be nonempty".into(),
        ));
    }
    for a in group_a {
        if group_b.contains(a) {
            return Err(Error::InvalidInput(format!(
                "mutual information groups must be disjoint; `{a}` appears in both"
            )));
        }
        joint.index_of(*a)?;
    }
    for b in group_b {
        joint.index_of(*b)?;
    }
    Ok(())
}

/// Exact mutual information between two groups of jointly Gaussian
/// variables, in bits:
/// `I(A;B) = 1/2 log2( det(Cov_A) det(Cov_B) / det(Cov_AB) )`.
pub fn mutual_information(
    joint: &GaussianJoint,
    group_a: &[Label],
    group_b: &[Label],
) -> Result<f64> {
    check_groups(joint, group_a, group_b)?;
    let det_a = joint.sub_cov(group_a)?.det();
    let det_b = joint.sub_cov(group_b)?.det();
    let joined: Vec<Label> = group_a.iter().chain(group_b.iter()).copied().collect();
    let det_ab = joint.sub_cov(&joined)?.det();
    if det_ab <= 1e-300 {
        return Err(Error::SingularCovariance {
            context: format!("joint covariance determinant {det_ab} is not positive"),
        });
    }
    Ok(0.5 * (det_a * det_b / det_ab).log2())
}

/// Coefficients and residual variance of a linear MMSE estimator.
#[derive(Debug, Clone, PartialEq)]
pub struct MmseSolution {
    /// Estimator weights, in observation order.
    pub coefficients: Vec<f64>,
    /// Residual mean squared error.
    pub mmse: f64,
}

const MAX_CONDITION: f64 = 1e12;

/// Optimal linear estimate of `target` from `observations`:
/// coefficients `Lambda^{-1} Gamma` and residual
/// `Var(target) - Gamma^T Lambda^{-1} Gamma`.
pub fn linear_mmse(
    joint: &GaussianJoint,
    target: Label,
    observations: &[Label],
) -> Result<MmseSolution> {
    if observations.is_empty() {
        return Err(Error::InvalidInput(
            "MMSE estimation needs at least one observation".into(),
        ));
    }
    let lambda = joint.sub_cov(observations)?;
    let cond = lambda.condition_1();
    if !(cond < MAX_CONDITION) {
        return Err(Error::SingularCovariance {
            context: format!("observation covariance condition estimate {cond}"),
        });
    }
    let gamma: Vec<f64> = observations
        .iter()
        .map(|&obs| joint.covariance(obs, target))
        .collect::<Result<_>>()?;
    let coefficients = lambda.solve(&gamma)?;
    let explained: f64 = coefficients.iter().zip(&gamma).map(|(c, g)| c * g).sum();
    let var_target = joint.variance(target)?;
    let mmse = (var_target - explained).clamp(0.0, var_target);
    Ok(MmseSolution { coefficients, mmse })
}

/// Mean squared error of a *fixed* linear estimator (not re-optimized):
/// `Var(t) - 2 c^T Gamma + c^T Lambda c` under this joint law.
///
/// This is the designed-estimator construction used to verify the mismatch
/// formulas: coefficients computed at the design noise, error evaluated
/// under the actual noise.
pub fn fixed_estimator_mse(
    joint: &GaussianJoint,
    target: Label,
    observations: &[Label],
    coefficients: &[f64],
) -> Result<f64> {
    if coefficients.len() != observations.len() {
        return Err(Error::InvalidInput(format!(
            "{} coefficients for {} observations",
            coefficients.len(),
            observations.len()
        )));
    }
    let lambda = joint.sub_cov(observations)?;
    let mut mse = joint.variance(target)?;
    for (i, &obs) in observations.iter().enumerate() {
        mse -= 2.0 * coefficients[i] * joint.covariance(obs, target)?;
        for (j, c_j) in coefficients.iter().enumerate() {
            mse += coefficients[i] * c_j * lambda.get(i, j);
        }
    }
    Ok(mse)
}
