//! Quadrant XOR / circular-shift image cipher driven by the combination map.

mod key;
mod keystream;
mod meta;
mod pipeline;
mod quadrant;

pub use key::{KeyMap, SecretKey};
pub use keystream::{build_keystreams, mean_offset, quantize, xor_quadrants, KeystreamSet};
pub use meta::{channel_sums, CipherMeta, META_VERSION};
pub use pipeline::{
    decrypt, encrypt, encrypt_gray, encrypt_image, encrypt_with_meta, post_shift_and_whiten, pre_shift,
    pre_shift_gray, undo_post_shift_and_whiten,
};
pub use quadrant::{div, ediv, QuadrantGeometry, QuadrantSet};
