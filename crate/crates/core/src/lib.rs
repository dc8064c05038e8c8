//! Combination chaotic maps and a chaos-driven image cipher.
//!
//! - [`chaos`]: Logistic, Sine, Tent and Logistic-Tent maps, the weighted
//!   combination map and its three presets, orbit generation.
//! - [`analysis`]: Lyapunov exponents, bifurcation data, histograms, cobweb
//!   traces and orbit divergence.
//! - [`cipher`]: quadrant XOR / circular-shift encryption of colour, gray and
//!   binary images and its exact inverse.
//! - [`metrics`]: correlation, entropy, NPCR/UACI and attack experiments.
//! - [`formats`]: PNG/PNM image I/O; key and metadata files live on
//!   [`SecretKey`] and [`CipherMeta`].

pub mod analysis;
pub mod chaos;
pub mod cipher;
mod error;
pub mod formats;
pub mod image;
pub mod metrics;
pub mod samples;
pub mod shift;

pub use chaos::{case_preset, combined_map, sequence, BaseMap, Case, ChaoticMap, CombinedMapSpec, Orbit};
pub use cipher::{decrypt, encrypt, encrypt_gray, encrypt_image, CipherMeta, KeyMap, SecretKey};
pub use error::{Error, Result};
pub use image::{ImageBuffer, ImageKind, Matrix};
