fn main() {
    std::process::exit(kacspin::cli::run(std::env::args_os()));
}
