fn main() {
    std::process::exit(imglab::cli::dispatch(std::env::args_os()));
}
