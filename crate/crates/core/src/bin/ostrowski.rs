fn main() {
    std::process::exit(ostrowski::cli::run(std::env::args_os()));
}
