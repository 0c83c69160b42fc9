fn main() {
    std::process::exit(isocomb::cli::dispatch(std::env::args_os()));
}
