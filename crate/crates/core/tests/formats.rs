use chaoscrypt::formats::{load_image, save_png};
use chaoscrypt::samples::{binary_silhouette, natural_color, natural_gray};
use chaoscrypt::{decrypt, encrypt_image, CipherMeta, Error, ImageKind, SecretKey};

#[test]
fn cipher_survives_png_and_sidecar_files() {
    let dir = tempfile::tempdir().unwrap();
    let key = SecretKey::reference();
    for img in [natural_color(40, 52, 1), natural_gray(31, 17, 2), binary_silhouette(30, 30)] {
        let (c, meta) = encrypt_image(&img, &key, 0.123, 0.456).unwrap();
        let cpath = dir.path().join("c.png");
        let mpath = dir.path().join("c.meta.json");
        save_png(&cpath, &c).unwrap();
        std::fs::write(&mpath, meta.to_json()).unwrap();

        let c2 = load_image(&cpath).unwrap();
        let meta2 = CipherMeta::from_json(&std::fs::read_to_string(&mpath).unwrap()).unwrap();
        assert_eq!(meta2, meta);
        assert_eq!(c2.as_slice(), c.as_slice());
        let back = decrypt(&c2, &meta2, &key).unwrap();
        assert_eq!(back, img);
    }
}

#[test]
fn binary_png_loads_as_binary() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("b.png");
    save_png(&p, &binary_silhouette(20, 25)).unwrap();
    assert_eq!(load_image(&p).unwrap().kind(), ImageKind::Binary);
}

#[test]
fn missing_file_is_io_error() {
    let err = load_image("/nonexistent/file.png").unwrap_err();
    assert!(matches!(err, Error::Io(_)), "{err:?}");
}

#[test]
fn pgm_input_is_accepted() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("g.pgm");
    let mut bytes = b"P5\n3 2\n255\n".to_vec();
    bytes.extend_from_slice(&[0, 10, 20, 30, 40, 255]);
    std::fs::write(&p, bytes).unwrap();
    let img = load_image(&p).unwrap();
    assert_eq!((img.rows(), img.cols(), img.kind()), (2, 3, ImageKind::Gray));
}
