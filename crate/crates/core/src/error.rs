use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("{what} = {value} is outside {range}")]
    Domain {
        what: &'static str,
        value: f64,
        range: &'static str,
    },

    #[error("map evaluation produced a non-finite value at r = {r}, x = {x}")]
    Singularity { r: f64, x: f64 },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("image is {rows}x{cols}; at least 2x2 is required")]
    ImageTooSmall { rows: usize, cols: usize },

    #[error("geometry mismatch: {0}")]
    GeometryMismatch(String),

    #[error("invalid image: {0}")]
    InvalidImage(String),

    #[error("malformed cipher metadata: {0}")]
    MalformedMeta(String),

    #[error("invalid key: {0}")]
    InvalidKey(String),

    #[error("orbit collapsed so that no derivative sample could be taken")]
    NoUsableSamples,

    #[error("format error: {0}")]
    Format(String),

    #[error("i/o error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn check_r(r: f64) -> Result<()> {
    if r > 0.0 && r <= 4.0 {
        Ok(())
    } else {
        Err(Error::Domain {
            what: "r",
            value: r,
            range: "(0, 4]",
        })
    }
}

pub(crate) fn check_unit(what: &'static str, x: f64) -> Result<()> {
    if (0.0..=1.0).contains(&x) {
        Ok(())
    } else {
        Err(Error::Domain {
            what,
            value: x,
            range: "[0, 1]",
        })
    }
}
