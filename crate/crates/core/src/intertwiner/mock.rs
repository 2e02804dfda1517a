use num_traits::Zero;

use crate::error::{Error, Result};
use crate::fock::{apply_l, ModuleVector, OmegaSpec};
use crate::logseries::{LogSeries, TruncationWindow};
use crate::scalar::{factorial, pow, Rational};

use super::canonical::intertwiner_apply;
use super::operator::CheckOutcome;
use super::IntertwinerSpec;

/// Outcome of [`mock_log_check`].
#[derive(Clone, Debug)]
pub struct MockReport {
    pub lambda: Rational,
    pub nu: Rational,
    pub cutoff: u32,
    /// `L(-1)` property on log powers below the last kept one.
    pub l_minus1: Vec<CheckOutcome>,
    /// Coefficient of `x^0 log^(K-1)` on the vacuum legs.
    pub top_log: ModuleVector,
    pub depth: u32,
}

impl MockReport {
    pub fn l_minus1_pass(&self) -> bool {
        self.l_minus1.iter().all(|c| c.pass)
    }

    pub fn top_log_nonzero(&self) -> bool {
        !self.top_log.is_zero()
    }
}

/// `Y_log(w1, x) w2 = Y(w1, x) x^(-lambda h(0)) e^(lambda h(0) log x) w2` with
/// the exponential cut after `log^(K-1)`; `h(0) = nu` on one-dimensional
/// `Omega_2`.
fn mock_apply(
    spec: &IntertwinerSpec,
    w1: &ModuleVector,
    w2: &ModuleVector,
    window: &TruncationWindow,
    cutoff: u32,
) -> Result<LogSeries> {
    let y = intertwiner_apply(spec, w1, w2, window)?;
    let ln = spec.offset();
    let mut w = y.window();
    w.max_log = cutoff - 1;
    w.log_cut = true;
    let mut out = LogSeries::zero(Rational::zero(), w);
    for (&(k, j), v) in y.terms() {
        for r in 0..cutoff {
            let c = pow(&ln, r) / factorial(r);
            out.accumulate(k, j + r, v, &c)?;
        }
    }
    Ok(out)
}

/// Builds the mock operator on one-dimensional vacuum spaces and checks that
/// the `L(-1)` property holds below the cutoff while the top kept log power
/// is nonzero.
pub fn mock_log_check(
    lambda: &Rational,
    nu: &Rational,
    a: &Rational,
    window: &TruncationWindow,
    cutoff: u32,
) -> Result<MockReport> {
    if cutoff == 0 {
        return Err(Error::InvalidArgument("log cutoff K must be >= 1".into()));
    }
    if (lambda * nu).is_zero() {
        return Err(Error::DegenerateParameters(
            "lambda * nu = 0: the mock operator is the ordinary one".into(),
        ));
    }
    let spec = IntertwinerSpec::identity(
        a.clone(),
        OmegaSpec::one_dim(lambda.clone()),
        OmegaSpec::one_dim(nu.clone()),
    )?;
    let w1 = ModuleVector::vacuum(0);
    let samples = [
        ModuleVector::vacuum(0),
        ModuleVector::monomial(&[1], 0)?,
        ModuleVector::monomial(&[2], 0)?,
        ModuleVector::monomial(&[1, 1], 0)?,
    ];
    let mut checks = Vec::new();
    // With K = 1 no log power lies below the cutoff and nothing is compared.
    if cutoff >= 2 {
        for w2 in &samples {
            let y = mock_apply(&spec, &w1, w2, window, cutoff)?;
            let l2 = apply_l(-1, w2, spec.omega2(), a);
            let lhs = y
                .map_coefficients(|v| apply_l(-1, v, spec.omega3(), a))
                .sub(&mock_apply(&spec, &w1, &l2, window, cutoff)?)?;
            checks.push(CheckOutcome::from_difference(&lhs, &y.ddx())?);
        }
    }
    let y0 = mock_apply(&spec, &w1, &samples[0], window, cutoff)?;
    Ok(MockReport {
        lambda: lambda.clone(),
        nu: nu.clone(),
        cutoff,
        l_minus1: checks,
        top_log: y0.coefficient(0, cutoff - 1)?,
        depth: y0.depth(),
    })
}
