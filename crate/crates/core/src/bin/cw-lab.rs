fn main() {
    std::process::exit(cahen_wallach::cli::main_with_args(std::env::args_os()));
}
