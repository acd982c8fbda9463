use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("size {value} out of range [{min}, {max}] for {what}")]
    Size {
        what: &'static str,
        value: usize,
        min: usize,
        max: usize,
    },

    #[error("invalid position vector: {0}")]
    InvalidPositions(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("eigensolver did not converge after {sweeps} sweeps (off-diagonal residual {residual:e})")]
    Convergence { sweeps: usize, residual: f64 },
}

pub(crate) fn check_range(what: &'static str, value: usize, min: usize, max: usize) -> Result<()> {
    if value < min || value > max {
        return Err(Error::Size {
            what,
            value,
            min,
            max,
        });
    }
    Ok(())
}
