fn main() {
    std::process::exit(lazyder::cli::run(std::env::args_os()));
}
