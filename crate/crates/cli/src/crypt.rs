use std::path::PathBuf;
use std::time::Instant;

use anyhow::{bail, ensure, Context, Result};
use chaoscrypt::{decrypt, encrypt_image, ImageKind};
use clap::Args;
use rand::Rng;

use crate::common::{parse_unit_nonce, read_image, read_meta, rng_for, sidecar_for, write_image, write_text, KeyArgs};

#[derive(Debug, Args)]
pub struct EncryptArgs {
    /// Plaintext image (PNG, or PPM/PGM)
    #[arg(long = "in", value_name = "PATH")]
    pub input: PathBuf,
    #[command(flatten)]
    pub key: KeyArgs,
    /// Ciphertext PNG
    #[arg(long)]
    pub out: PathBuf,
    /// Metadata sidecar [default: <out stem>.meta.json]
    #[arg(long)]
    pub meta: Option<PathBuf>,
    /// Derive nonces from --seed instead of the system generator
    #[arg(long)]
    pub deterministic: bool,
    #[arg(long, requires = "deterministic")]
    pub seed: Option<u64>,
    /// First nonce y0_0 in [0, 1)
    #[arg(long, value_parser = parse_unit_nonce, requires = "deterministic")]
    pub nonce0: Option<f64>,
    /// Second nonce for colour images (y0_4)
    #[arg(long, value_parser = parse_unit_nonce, requires = "deterministic", conflicts_with = "nonce2")]
    pub nonce4: Option<f64>,
    /// Second nonce for gray and binary images (y0_2)
    #[arg(long, value_parser = parse_unit_nonce, requires = "deterministic")]
    pub nonce2: Option<f64>,
}

pub fn encrypt_cmd(args: &EncryptArgs) -> Result<()> {
    let key = args.key.load()?;
    let plain = read_image(&args.input)?;
    match plain.kind() {
        ImageKind::Color if args.nonce2.is_some() => bail!("--nonce2 applies to gray images; use --nonce4"),
        ImageKind::Gray | ImageKind::Binary if args.nonce4.is_some() => {
            bail!("--nonce4 applies to colour images; use --nonce2")
        }
        _ => {}
    }
    let (n0, naux) = if args.deterministic {
        let (mut rng, _) = rng_for(Some(args.seed.unwrap_or(0)));
        let drawn: (f64, f64) = (rng.random(), rng.random());
        (args.nonce0.unwrap_or(drawn.0), args.nonce4.or(args.nonce2).unwrap_or(drawn.1))
    } else {
        let mut rng = rand::rng();
        (rng.random(), rng.random())
    };
    let start = Instant::now();
    let (cipher, meta) = encrypt_image(&plain, &key, n0, naux)?;
    let elapsed = start.elapsed();
    let meta_path = args.meta.clone().unwrap_or_else(|| sidecar_for(&args.out));
    write_image(&args.out, &cipher)?;
    write_text(&meta_path, &meta.to_json())?;
    eprintln!(
        "encrypted {}x{} {} image in {:.1} ms; wrote {} and {}",
        plain.rows(),
        plain.cols(),
        plain.kind(),
        elapsed.as_secs_f64() * 1e3,
        args.out.display(),
        meta_path.display()
    );
    Ok(())
}

#[derive(Debug, Args)]
pub struct DecryptArgs {
    /// Ciphertext PNG
    #[arg(long = "in", value_name = "PATH")]
    pub input: PathBuf,
    #[command(flatten)]
    pub key: KeyArgs,
    /// Metadata sidecar [default: <in stem>.meta.json]
    #[arg(long)]
    pub meta: Option<PathBuf>,
    #[arg(long)]
    pub out: PathBuf,
    /// Fail unless the decryption equals this image
    #[arg(long, value_name = "ORIGINAL")]
    pub verify: Option<PathBuf>,
}

pub fn decrypt_cmd(args: &DecryptArgs) -> Result<()> {
    let key = args.key.load()?;
    let cipher = read_image(&args.input)?;
    let meta_path = args.meta.clone().unwrap_or_else(|| sidecar_for(&args.input));
    ensure!(meta_path.exists(), "metadata sidecar {} not found", meta_path.display());
    let meta = read_meta(&meta_path)?;
    let start = Instant::now();
    let plain = decrypt(&cipher, &meta, &key).context("decrypting")?;
    let elapsed = start.elapsed();
    write_image(&args.out, &plain)?;
    eprintln!(
        "decrypted {}x{} {} image in {:.1} ms; wrote {}",
        plain.rows(),
        plain.cols(),
        plain.kind(),
        elapsed.as_secs_f64() * 1e3,
        args.out.display()
    );
    if let Some(orig) = &args.verify {
        let original = read_image(orig)?;
        ensure!(
            original.as_slice() == plain.as_slice() && original.rows() == plain.rows() && original.cols() == plain.cols(),
            "verification failed: decryption differs from {}",
            orig.display()
        );
        eprintln!("verified: identical to {}", orig.display());
    }
    Ok(())
}
