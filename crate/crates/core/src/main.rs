fn main() {
    std::process::exit(pstar::cli::dispatch(std::env::args_os()));
}
