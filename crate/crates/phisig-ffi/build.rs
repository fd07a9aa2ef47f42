#[cfg(feature = "ffi-headers")]
fn generate_header() {
    let crate_dir = std::env::var("CARGO_MANIFEST_DIR").expect("CARGO_MANIFEST_DIR not set");
    cbindgen::generate(&crate_dir)
        .expect("could not generate the C header")
        .write_to_file(format!("{crate_dir}/include/phisig.h"));
}

fn main() {
    #[cfg(feature = "ffi-headers")]
    generate_header();
}
