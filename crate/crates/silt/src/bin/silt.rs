fn main() {
    // CLI wired up once the engines land.
    eprintln!("silt: not yet implemented");
    std::process::exit(2);
}
