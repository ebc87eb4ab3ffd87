#include "iqy/cli.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <string>
#include <thread>

namespace iqy::cli {

namespace {

[[noreturn]] void config_error(const std::string& what) {
    throw Error(ErrorCode::ConfigError, what);
}

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string_view::npos) {
        return {};
    }
    const auto last = s.find_last_not_of(" \t\r\n");
    return s.substr(first, last - first + 1);
}

double parse_double(std::string_view text, std::string_view key) {
    const std::string_view t = trim(text);
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), value);
    if (t.empty() || ec != std::errc() || ptr != t.data() + t.size() || !std::isfinite(value)) {
        config_error("'" + std::string(key) + "' expects a finite number, got '" + std::string(text) + "'");
    }
    return value;
}

int parse_int(std::string_view text, std::string_view key) {
    const std::string_view t = trim(text);
    int value = 0;
    const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), value);
    if (t.empty() || ec != std::errc() || ptr != t.data() + t.size()) {
        config_error("'" + std::string(key) + "' expects an integer, got '" + std::string(text) + "'");
    }
    return value;
}

std::vector<std::string_view> split_commas(std::string_view text) {
    std::vector<std::string_view> parts;
    const std::string_view t = trim(text);
    if (t.empty()) {
        return parts;
    }
    std::size_t start = 0;
    while (true) {
        const std::size_t comma = t.find(',', start);
        parts.push_back(trim(t.substr(start, comma == std::string_view::npos ? comma : comma - start)));
        if (comma == std::string_view::npos) {
            break;
        }
        start = comma + 1;
    }
    return parts;
}

std::string normalize_key(std::string_view key) {
    std::string k(trim(key));
    std::replace(k.begin(), k.end(), '_', '-');
    return k;
}

}  // namespace

std::vector<int> parse_int_list(std::string_view text) {
    std::vector<int> out;
    for (std::string_view part : split_commas(text)) {
        out.push_back(parse_int(part, "list"));
    }
    return out;
}

std::vector<double> parse_double_list(std::string_view text) {
    std::vector<double> out;
    for (std::string_view part : split_commas(text)) {
        out.push_back(parse_double(part, "list"));
    }
    return out;
}

dirac::EnergyWindow parse_window(std::string_view text) {
    const std::vector<double> v = parse_double_list(text);
    if (v.size() != 2) {
        config_error("window expects 'lo,hi'");
    }
    if (!(v[0] < v[1])) {
        config_error("window needs lo < hi");
    }
    return {v[0], v[1]};
}

std::string format_number(double x) {
    if (std::isnan(x)) {
        return "nan";
    }
    if (std::isinf(x)) {
        return x > 0.0 ? "inf" : "-inf";
    }
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.9g", x);
    return buf;
}

int RunConfig::resolved_n_min() const {
    return n_min.value_or(symmetry == dirac::Symmetry::pspin ? 1 : 0);
}

int RunConfig::resolved_n_max() const {
    return n_max.value_or(resolved_n_min() + 1);
}

std::vector<int> RunConfig::resolved_kappas() const {
    if (kappas) {
        return *kappas;
    }
    if (symmetry == dirac::Symmetry::pspin) {
        return {-4, -3, -2, -1, 2, 3, 4, 5};
    }
    return {-5, -4, -3, -2, 1, 2, 3, 4};
}

limits::MieParams RunConfig::resolved_mie() const {
    return mie.value_or(limits::iqy_to_mie(params.v0, params.screening));
}

void RunConfig::validate() const {
    try {
        params.validate();
    } catch (const Error& e) {
        config_error(e.what());
    }
    const std::vector<int> ks = resolved_kappas();
    if (ks.empty()) {
        config_error("kappa list is empty");
    }
    if (std::find(ks.begin(), ks.end(), 0) != ks.end()) {
        config_error("kappa list contains 0");
    }
    if (resolved_n_min() < 0 || resolved_n_max() < resolved_n_min()) {
        config_error("need 0 <= n-min <= n-max");
    }
    if (resolved_n_max() > 64) {
        config_error("n-max above the polynomial degree cap of 64");
    }
    if (tensor_h.empty()) {
        config_error("tensor-h list is empty");
    }
    for (double h : tensor_h) {
        if (!(h >= 0.0)) {
            config_error("tensor-h values must be >= 0");
        }
    }
    if (!(tol > 0.0)) {
        config_error("tol must be > 0");
    }
    if (scan_step && !(*scan_step > 0.0)) {
        config_error("scan-step must be > 0");
    }
    if (oracle_step && !(*oracle_step > 0.0)) {
        config_error("oracle-step must be > 0");
    }
    if (window && !(window->lo < window->hi)) {
        config_error("window needs lo < hi");
    }
    if (potential == Potential::mie && symmetry != dirac::Symmetry::pspin) {
        config_error("the Mie-type potential is available for pspin only");
    }
}

void apply_setting(RunConfig& c, std::string_view raw_key, std::string_view raw_value) {
    const std::string key = normalize_key(raw_key);
    const std::string_view value = trim(raw_value);
    if (key == "symmetry") {
        const auto s = dirac::parse_symmetry(value);
        if (!s) {
            config_error("symmetry must be spin or pspin");
        }
        c.symmetry = *s;
    } else if (key == "mass") {
        c.params.mass = parse_double(value, key);
    } else if (key == "v0") {
        c.params.v0 = parse_double(value, key);
    } else if (key == "screening") {
        c.params.screening = parse_double(value, key);
    } else if (key == "tensor-h") {
        c.tensor_h = parse_double_list(value);
        if (c.tensor_h.empty()) {
            config_error("tensor-h list is empty");
        }
    } else if (key == "cs") {
        c.params.cs = parse_double(value, key);
    } else if (key == "cps") {
        c.params.cps = parse_double(value, key);
    } else if (key == "n-min") {
        c.n_min = parse_int(value, key);
    } else if (key == "n-max") {
        c.n_max = parse_int(value, key);
    } else if (key == "kappa") {
        c.kappas = parse_int_list(value);
    } else if (key == "window") {
        c.window = parse_window(value);
    } else if (key == "tol") {
        c.tol = parse_double(value, key);
    } else if (key == "scan-step") {
        c.scan_step = parse_double(value, key);
    } else if (key == "mode") {
        if (value == "strict") {
            c.mode = dirac::SolveMode::strict;
        } else if (value == "relaxed") {
            c.mode = dirac::SolveMode::relaxed;
        } else {
            config_error("mode must be strict or relaxed");
        }
    } else if (key == "potential") {
        if (value == "iqy") {
            c.potential = Potential::iqy;
        } else if (value == "mie") {
            c.potential = Potential::mie;
        } else {
            config_error("potential must be iqy or mie");
        }
    } else if (key == "mie-a" || key == "mie-b" || key == "mie-c") {
        limits::MieParams m = c.resolved_mie();
        const double v = parse_double(value, key);
        (key == "mie-a" ? m.a : key == "mie-b" ? m.b : m.c) = v;
        c.mie = m;
    } else if (key == "oracle-step") {
        c.oracle_step = parse_double(value, key);
    } else if (key == "out") {
        if (value.empty()) {
            config_error("out needs a path");
        }
        c.out = std::string(value);
    } else if (key == "format") {
        if (value == "csv") {
            c.format = Format::csv;
        } else if (value == "json") {
            c.format = Format::json;
        } else {
            config_error("format must be csv or json");
        }
    } else if (key == "inject-residual-offset") {
        c.fault_offset = parse_double(value, key);
        c.fault_offset_set = true;
    } else {
        config_error("unknown setting '" + key + "'");
    }
}

void apply_config_file(RunConfig& config, const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw Error(ErrorCode::IoError, "cannot read config file '" + path + "'");
    }
    std::string line;
    int number = 0;
    while (std::getline(in, line)) {
        ++number;
        const std::string_view t = trim(line);
        if (t.empty() || t.front() == '#') {
            continue;
        }
        const auto eq = t.find('=');
        if (eq == std::string_view::npos) {
            config_error(path + ":" + std::to_string(number) + ": expected key = value");
        }
        apply_setting(config, t.substr(0, eq), t.substr(eq + 1));
    }
}

int exit_code_for(ErrorCode code) noexcept {
    switch (code) {
        case ErrorCode::ConfigError:
        case ErrorCode::InvalidParameter:
        case ErrorCode::ZeroKappa:
        case ErrorCode::EmptyWindow:
            return kExitConfig;
        case ErrorCode::IoError:
            return kExitIo;
        default:
            return kExitNoRoot;
    }
}

unsigned worker_count() {
    unsigned hw = std::thread::hardware_concurrency();
    if (hw == 0) {
        hw = 1;
    }
    if (const char* env = std::getenv("SPECTRA_THREADS")) {
        const int requested = std::atoi(env);
        if (requested > 0) {
            return std::min(hw, static_cast<unsigned>(requested));
        }
    }
    return hw;
}

}  // namespace iqy::cli
