fn main() -> std::process::ExitCode {
    bicut::cli::main_with(std::env::args_os())
}
