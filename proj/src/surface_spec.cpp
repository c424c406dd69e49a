#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "calabikit/surfaces.hpp"

namespace calabikit {

namespace {

// "2", "-1.5", "2i", "1+2i", "-3.5-0.25i", "i"
Complex parse_complex(const std::string& text) {
    if (text.empty()) throw std::invalid_argument("empty complex literal");
    std::string t = text;
    double re = 0.0, im = 0.0;
    // split off a trailing imaginary part, if present
    if (t.back() == 'i' || t.back() == 'I') {
        t.pop_back();
        // without an interior sign the whole literal is the imaginary part
        size_t split = 0;
        for (size_t i = t.size(); i-- > 1;) {
            if ((t[i] == '+' || t[i] == '-') && t[i - 1] != 'e' && t[i - 1] != 'E') {
                split = i;
                break;
            }
        }
        std::string im_text = t.substr(split);
        if (im_text.empty() || im_text == "+")
            im = 1.0;
        else if (im_text == "-")
            im = -1.0;
        else
            im = std::stod(im_text);
        const std::string re_text = t.substr(0, split);
        if (!re_text.empty()) re = std::stod(re_text);
    } else {
        re = std::stod(t);
    }
    return {re, im};
}

std::string format_real(double v) {
    std::ostringstream os;
    os << v;
    return os.str();
}

std::string format_complex(Complex v) {
    if (v.imag() == 0.0) return format_real(v.real());
    std::string s = v.real() == 0.0 ? "" : format_real(v.real());
    if (v.imag() >= 0.0 && !s.empty()) s += "+";
    s += format_real(v.imag()) + "i";
    return s;
}

std::vector<std::string> split(const std::string& text, char sep) {
    std::vector<std::string> parts;
    std::string cur;
    for (char c : text) {
        if (c == sep) {
            parts.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    parts.push_back(cur);
    return parts;
}

}  // namespace

SurfaceSpec SurfaceSpec::parse(const std::string& selector) {
    std::string text = selector;
    std::transform(text.begin(), text.end(), text.begin(), [](unsigned char c) { return std::tolower(c); });
    const auto colon = text.find(':');
    const std::string family = text.substr(0, colon);
    const std::string args = colon == std::string::npos ? "" : text.substr(colon + 1);

    SurfaceSpec spec;
    if (family == "hopf") {
        spec.family = Family::HopfDiagonal;
        std::optional<double> a, b;
        std::optional<Complex> alpha, beta;
        for (const std::string& kv : split(args, ',')) {
            if (kv.empty()) continue;
            const auto eq = kv.find('=');
            if (eq == std::string::npos) throw std::invalid_argument("hopf: expected key=value, got '" + kv + "'");
            const std::string key = kv.substr(0, eq), value = kv.substr(eq + 1);
            if (key == "a")
                a = std::stod(value);
            else if (key == "b")
                b = std::stod(value);
            else if (key == "alpha")
                alpha = parse_complex(value);
            else if (key == "beta")
                beta = parse_complex(value);
            else
                throw std::invalid_argument("hopf: unknown parameter '" + key + "'");
        }
        if (alpha && beta) {
            spec.alpha = *alpha;
            spec.beta = *beta;
        } else if (a && b) {
            // |alpha| = e^a, |beta| = e^b reproduce exactly these exponents
            spec.alpha = std::exp(*a);
            spec.beta = std::exp(*b);
        } else {
            throw std::invalid_argument("hopf: give either a=..,b=.. or alpha=..,beta=..");
        }
    } else if (family == "parton") {
        spec.family = Family::HopfParton;
        spec.alpha = 2.0;
        bool have_k = false;
        for (const std::string& kv : split(args, ',')) {
            if (kv.empty()) continue;
            const auto eq = kv.find('=');
            if (eq == std::string::npos) throw std::invalid_argument("parton: expected key=value");
            const std::string key = kv.substr(0, eq), value = kv.substr(eq + 1);
            if (key == "k") {
                spec.k = std::stoi(value);
                have_k = true;
            } else if (key == "alpha") {
                spec.alpha = parse_complex(value);
            } else {
                throw std::invalid_argument("parton: unknown parameter '" + key + "'");
            }
        }
        if (!have_k) throw std::invalid_argument("parton: missing k=...");
    } else if (family == "elliptic") {
        spec.family = Family::ProperlyElliptic;
    } else if (family == "kodaira") {
        spec.family = Family::Kodaira;
    } else if (family == "inoue") {
        spec.family = Family::InoueSM;
        // canonical choice: the companion matrix of x^3 - x - 1
        spec.inoue_m << 0, 1, 0, 0, 0, 1, 1, 1, 0;
        if (!args.empty()) {
            if (args.rfind("m=", 0) != 0) throw std::invalid_argument("inoue: expected m=<9 integers>");
            const std::vector<std::string> entries = split(args.substr(2), ',');
            if (entries.size() != 9) throw std::invalid_argument("inoue: m needs 9 integers");
            for (int i = 0; i < 9; ++i) spec.inoue_m(i / 3, i % 3) = std::stoi(entries[static_cast<size_t>(i)]);
        }
    } else if (family == "ambient") {
        spec.family = Family::HopfAmbient;
        spec.alpha = 2.0;
        for (const std::string& kv : split(args, ',')) {
            if (kv.empty()) continue;
            const auto eq = kv.find('=');
            if (eq == std::string::npos) throw std::invalid_argument("ambient: expected key=value");
            if (kv.substr(0, eq) == "lambda")
                spec.alpha = parse_complex(kv.substr(eq + 1));
            else
                throw std::invalid_argument("ambient: unknown parameter");
        }
    } else {
        throw std::invalid_argument("unknown surface family '" + family + "'");
    }
    spec.validate();
    return spec;
}

void SurfaceSpec::validate() const {
    switch (family) {
        case Family::HopfDiagonal:
            if (!(std::abs(alpha) >= std::abs(beta) && std::abs(beta) > 1.0))
                throw std::invalid_argument("hopf: requires |alpha| >= |beta| > 1");
            break;
        case Family::HopfParton:
            if (k < 1) throw std::invalid_argument("parton: k must be a positive integer");
            if (!(std::abs(alpha) > 1.0)) throw std::invalid_argument("parton: requires |alpha| > 1");
            break;
        case Family::InoueSM: inoue_eigen_data(inoue_m); break;
        case Family::HopfAmbient:
            if (std::abs(alpha) == 0.0 || std::abs(std::abs(alpha) - 1.0) < 1e-12)
                throw std::invalid_argument("ambient: requires |lambda| not 0 or 1");
            break;
        default: break;
    }
}

std::string SurfaceSpec::name() const {
    switch (family) {
        case Family::HopfDiagonal:
            return "hopf:alpha=" + format_complex(alpha) + ",beta=" + format_complex(beta);
        case Family::HopfParton:
            return "parton:k=" + std::to_string(k) + ",alpha=" + format_complex(alpha);
        case Family::ProperlyElliptic: return "elliptic";
        case Family::Kodaira: return "kodaira";
        case Family::InoueSM: {
            std::string s = "inoue:m=";
            for (int i = 0; i < 9; ++i) s += (i ? "," : "") + std::to_string(inoue_m(i / 3, i % 3));
            return s;
        }
        case Family::HopfAmbient: return "ambient:lambda=" + format_complex(alpha);
    }
    return "?";
}

}  // namespace calabikit
