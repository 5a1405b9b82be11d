fn main() {
    let crate_dir = std::env::var("CARGO_MANIFEST_DIR").expect("CARGO_MANIFEST_DIR");
    let header = std::path::Path::new(&crate_dir)
        .join("include")
        .join("casimir_polder.h");

    let config = cbindgen::Config::from_file(
        std::path::Path::new(&crate_dir).join("cbindgen.toml"),
    )
    .unwrap_or_default();

    match cbindgen::Builder::new()
        .with_config(config)
        .with_crate(&crate_dir)
        .generate()
    {
        Ok(bindings) => {
            bindings.write_to_file(header);
        }
        Err(err) => {
            // keep the committed header usable even if generation breaks
            println!("cargo:warning=cbindgen failed: {err}");
        }
    }
    println!("cargo:rerun-if-changed=src/lib.rs");
    println!("cargo:rerun-if-changed=cbindgen.toml");
}
