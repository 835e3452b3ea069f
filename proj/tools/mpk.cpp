// mpk — exact/numeric calculator CLI: means and elliptic integrals, gamma and
// beta, Laplace transform pairs, adaptive quadrature, and Lagutinski
// determinants for rational first integrals of planar derivations.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <iostream>
#include <limits>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "mpk/mpk.hpp"

namespace {

using Json = nlohmann::json;

struct CliConfig {
    int digits = 6;
    double tol = 1e-12;
    std::string format = "text";
    int dmax = 3;
};

std::string format_value(double v, int digits) {
    if (!std::isfinite(v)) return std::isnan(v) ? "nan" : (v > 0 ? "inf" : "-inf");
    char buf[512];
    std::snprintf(buf, sizeof buf, "%.*f", digits, v);
    std::string s(buf);
    if (s.find_first_of("123456789") == std::string::npos && !s.empty() && s[0] == '-')
        s.erase(0, 1);  // never print -0.000
    return s;
}

void emit(const CliConfig& cfg, const Json& value, const std::string& text,
          const std::optional<double>& err, Json meta) {
    if (cfg.format == "json") {
        Json j;
        j["value"] = value;
        j["error_estimate"] = err ? Json(*err) : Json(nullptr);
        j["metadata"] = std::move(meta);
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << text << "\n";
    }
}

void emit_numeric(const CliConfig& cfg, const char* command, double v,
                  const std::optional<double>& err, Json meta = Json::object()) {
    meta["command"] = command;
    emit(cfg, v, format_value(v, cfg.digits), err, std::move(meta));
}

void emit_symbolic(const CliConfig& cfg, const char* command, const std::string& s,
                   Json meta = Json::object()) {
    meta["command"] = command;
    emit(cfg, s, s, std::nullopt, std::move(meta));
}

mpk::Polynomial parse_polynomial(const std::string& text) {
    return mpk::to_polynomial(mpk::parse(text, {"x", "y"}));
}

// Merge `--flag value` into `--flag=value` so values that begin with '-'
// (e.g. --q -y) are not mistaken for option names.
std::vector<std::string> merge_flag_values(int argc, char** argv) {
    static const std::set<std::string> value_flags = {"--p",   "--q",   "--from",   "--to",  "--var",
                                                      "--tol", "--digits", "--format", "--dmax", "--d"};
    std::vector<std::string> out;
    for (int i = 1; i < argc; ++i) {
        std::string a = argv[i];
        if (value_flags.count(a) != 0 && i + 1 < argc) {
            out.push_back(a + "=" + argv[i + 1]);
            ++i;
        } else {
            out.push_back(std::move(a));
        }
    }
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    CliConfig cfg;
    int exit_status = 0;

    CLI::App app{"mpk — exact and numeric calculator: means, elliptic integrals, gamma/beta, "
                 "Laplace transform pairs, adaptive quadrature, and Lagutinski determinants"};
    app.require_subcommand(1);

    const CLI::Validator tol_check(
        [](std::string& s) -> std::string {
            double v = 0.0;
            try {
                std::size_t pos = 0;
                v = std::stod(s, &pos);
                if (pos != s.size()) return "not a number: " + s;
            } catch (...) {
                return "not a number: " + s;
            }
            if (!(v > 0.0 && v < 1.0)) return "must be in the open interval (0, 1)";
            return {};
        },
        "TOL");

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--digits", cfg.digits, "Decimal places in text output (1..17)")
            ->envname("MPK_DIGITS")
            ->check(CLI::Range(1, 17));
        sub->add_option("--tol", cfg.tol, "Numeric tolerance, in (0, 1)")
            ->envname("MPK_TOL")
            ->check(tol_check);
        sub->add_option("--format", cfg.format, "Output format: text or json")
            ->envname("MPK_FORMAT")
            ->check(CLI::IsMember({"text", "json"}));
        return sub;
    };

    double arg_a = 0.0, arg_b = 0.0, arg_k = 0.0, arg_z = 0.0;
    long long arg_n = 0, arg_r = 0;
    std::string expr_text, var = "x", to_text, p_text, q_text;
    double from_value = 0.0;
    unsigned det_order = 1;
    int fixed_degree = 0;

    // ---- means -----------------------------------------------------------
    const struct {
        const char* name;
        const char* help;
        mpk::MeanResult (*fn)(double, double, double);
    } mean_commands[] = {
        {"agm", "Arithmetic-geometric mean of A and B", &mpk::agm},
        {"ghm", "Geometric-harmonic mean of A and B", &mpk::ghm},
        {"magm", "Modified arithmetic-geometric mean of A and B", &mpk::magm},
    };
    for (const auto& mc : mean_commands) {
        CLI::App* sub = add_common(app.add_subcommand(mc.name, mc.help));
        sub->add_option("a", arg_a, "First value (positive)")->required();
        sub->add_option("b", arg_b, "Second value (positive)")->required();
        auto fn = mc.fn;
        const char* name = mc.name;
        sub->callback([&, fn, name] {
            const mpk::MeanResult r = fn(arg_a, arg_b, cfg.tol);
            emit_numeric(cfg, name, r.value, r.residual,
                         Json{{"iterations", r.iterations}, {"tolerance", cfg.tol}});
        });
    }

    // ---- ellipse / elliptic integrals -------------------------------------
    {
        CLI::App* sub = add_common(app.add_subcommand("ellipse", "Circumference of the ellipse with semi-axes A and B"));
        sub->add_option("a", arg_a, "Semi-axis (positive)")->required();
        sub->add_option("b", arg_b, "Semi-axis (positive)")->required();
        sub->callback([&] {
            emit_numeric(cfg, "ellipse", mpk::ellipse_circumference(arg_a, arg_b, cfg.tol), std::nullopt,
                         Json{{"tolerance", cfg.tol}});
        });
    }
    {
        CLI::App* sub = add_common(app.add_subcommand("ellipk", "Complete elliptic integral of the first kind K(k)"));
        sub->add_option("k", arg_k, "Modulus, 0 <= k < 1")->required();
        sub->callback([&] {
            emit_numeric(cfg, "ellipk", mpk::elliptic_k(arg_k, cfg.tol), std::nullopt, Json{{"tolerance", cfg.tol}});
        });
    }
    {
        CLI::App* sub = add_common(app.add_subcommand("ellipe", "Complete elliptic integral of the second kind E(k)"));
        sub->add_option("k", arg_k, "Modulus, 0 <= k <= 1")->required();
        sub->callback([&] {
            emit_numeric(cfg, "ellipe", mpk::elliptic_e(arg_k, cfg.tol), std::nullopt, Json{{"tolerance", cfg.tol}});
        });
    }

    // ---- special functions -------------------------------------------------
    {
        CLI::App* sub = add_common(app.add_subcommand("gamma", "Gamma function at Z (Z > 0)"));
        sub->add_option("z", arg_z, "Argument (positive)")->required();
        sub->callback([&] { emit_numeric(cfg, "gamma", mpk::gamma(arg_z), std::nullopt); });
    }
    {
        CLI::App* sub = add_common(app.add_subcommand("beta", "Beta function B(X, Y) (X, Y > 0)"));
        sub->add_option("x", arg_a, "First argument (positive)")->required();
        sub->add_option("y", arg_b, "Second argument (positive)")->required();
        sub->callback([&] { emit_numeric(cfg, "beta", mpk::beta(arg_a, arg_b), std::nullopt); });
    }
    {
        CLI::App* sub = add_common(app.add_subcommand("binom", "Binomial coefficient C(N, K), exact"));
        sub->add_option("n", arg_n, "Top index (nonnegative integer)")->required();
        sub->add_option("k", arg_r, "Bottom index (nonnegative integer)")->required();
        sub->callback([&] {
            if (arg_n < 0 || arg_r < 0) throw mpk::DomainError("binom requires nonnegative integers");
            const mpk::BigInt value = mpk::binomial(static_cast<unsigned>(arg_n), static_cast<unsigned>(arg_r));
            const std::string text = value.str();
            Json jvalue;
            if (value <= mpk::BigInt(std::numeric_limits<long long>::max()))
                jvalue = value.convert_to<long long>();
            else
                jvalue = text;
            Json meta{{"command", "binom"}};
            emit(cfg, jvalue, text, std::nullopt, std::move(meta));
        });
    }

    // ---- quadrature --------------------------------------------------------
    {
        CLI::App* sub = add_common(app.add_subcommand("integrate", "Adaptive quadrature of EXPR over [from, to] (to may be 'inf')"));
        sub->add_option("expr", expr_text, "Integrand expression")->required();
        sub->add_option("--var", var, "Integration variable (default x)");
        sub->add_option("--from", from_value, "Lower endpoint")->required();
        sub->add_option("--to", to_text, "Upper endpoint, a number or 'inf'")->required();
        sub->callback([&] {
            const mpk::ExprPtr ast = mpk::parse(expr_text, {var});
            auto f = [&](double x) { return mpk::eval_real(ast, var, x); };
            mpk::QuadratureResult r;
            if (to_text == "inf" || to_text == "+inf" || to_text == "infinity") {
                r = mpk::integrate_to_infinity(f, from_value, cfg.tol);
            } else {
                double to = 0.0;
                try {
                    std::size_t pos = 0;
                    to = std::stod(to_text, &pos);
                    if (pos != to_text.size()) throw std::invalid_argument(to_text);
                } catch (...) {
                    throw CLI::ValidationError("--to", "expected a number or 'inf'");
                }
                r = mpk::integrate(f, from_value, to, cfg.tol);
            }
            emit_numeric(cfg, "integrate", r.value, r.error_estimate,
                         Json{{"evaluations", r.evaluations}, {"converged", r.converged}, {"tolerance", cfg.tol}});
            if (!r.converged) {
                std::cerr << "note: quadrature did not reach tolerance " << cfg.tol
                          << "; best estimate has error estimate " << r.error_estimate << "\n";
                exit_status = 3;
            }
        });
    }

    // ---- Laplace -----------------------------------------------------------
    {
        CLI::App* sub = add_common(app.add_subcommand("laplace", "Laplace transform of EXPR in t"));
        sub->add_option("expr", expr_text, "Time-domain expression in t")->required();
        sub->callback([&] {
            const mpk::LaplaceRational F = mpk::laplace_transform(mpk::parse(expr_text, {"t"}));
            emit_symbolic(cfg, "laplace", F.render(),
                          Json{{"num_degree", F.num().degree()}, {"den_degree", F.den().degree()}});
        });
    }
    {
        CLI::App* sub = add_common(app.add_subcommand("invlaplace", "Inverse Laplace transform of a rational function of s"));
        sub->add_option("expr", expr_text, "Rational function of s")->required();
        sub->callback([&] {
            const mpk::LaplaceRational F = mpk::expr_to_laplace_rational(mpk::parse(expr_text, {"s"}));
            const mpk::InverseLaplaceResult r = mpk::inverse_laplace_transform(F);
            Json poles = Json::array();
            for (const mpk::PoleReport& p : r.poles)
                poles.push_back({{"re", p.location.real()},
                                 {"im", p.location.imag()},
                                 {"multiplicity", p.multiplicity},
                                 {"exact", p.exact}});
            emit_symbolic(cfg, "invlaplace", mpk::render(r.expr), Json{{"poles", poles}, {"exact", r.exact}});
        });
    }

    // ---- Lagutinski --------------------------------------------------------
    {
        CLI::App* sub = add_common(app.add_subcommand("detl", "Lagutinski determinant of order N for D = p d/dx + q d/dy"));
        sub->add_option("n", det_order, "Matrix order (>= 1)")->required()->check(CLI::PositiveNumber);
        sub->add_option("--p", p_text, "Coefficient of d/dx, a polynomial in x, y")->required();
        sub->add_option("--q", q_text, "Coefficient of d/dy, a polynomial in x, y")->required();
        sub->callback([&] {
            const mpk::Derivation D(parse_polynomial(p_text), parse_polynomial(q_text));
            const mpk::Polynomial det = mpk::detL(D, det_order);
            emit_symbolic(cfg, "detl", det.render(), Json{{"order", det_order}});
        });
    }
    {
        CLI::App* sub = add_common(app.add_subcommand(
            "find-integral", "Decide existence of a rational first integral and recover one when possible"));
        sub->add_option("--p", p_text, "Coefficient of d/dx, a polynomial in x, y")->required();
        sub->add_option("--q", q_text, "Coefficient of d/dy, a polynomial in x, y")->required();
        sub->add_option("--d", fixed_degree, "Test exactly this degree bound")->check(CLI::Range(1, 6));
        sub->add_option("--dmax", cfg.dmax, "Sweep degree bounds 1..M (default 3)")
            ->envname("MPK_DMAX")
            ->check(CLI::Range(1, 6));
        sub->callback([&] {
            const mpk::Derivation D(parse_polynomial(p_text), parse_polynomial(q_text));
            std::vector<unsigned> degrees;
            if (fixed_degree > 0)
                degrees.push_back(static_cast<unsigned>(fixed_degree));
            else
                for (int d = 1; d <= cfg.dmax; ++d) degrees.push_back(static_cast<unsigned>(d));

            Json sweep = Json::array();
            std::vector<std::string> lines;
            std::optional<std::string> found;
            bool exists_any = false;
            for (const unsigned d : degrees) {
                const mpk::IntegralReport rep = mpk::find_rational_integral(D, d);
                const auto order = mpk::index_bound(d);
                sweep.push_back({{"d", d}, {"order", order}, {"exists", rep.exists}});
                if (!rep.exists) {
                    lines.push_back("d=" + std::to_string(d) + ": no rational integral with degree bound " +
                                    std::to_string(d));
                    continue;
                }
                exists_any = true;
                lines.push_back("d=" + std::to_string(d) + ": rational integral exists (order-" +
                                std::to_string(order) + " determinant vanishes)");
                if (rep.integral) {
                    found = rep.integral->render();
                    lines.push_back("integral: " + *found);
                } else {
                    lines.push_back("integral: (existence certified; recovery failed)");
                }
                break;
            }
            std::string text;
            for (std::size_t i = 0; i < lines.size(); ++i) {
                if (i) text += "\n";
                text += lines[i];
            }
            emit(cfg, found ? Json(*found) : Json(nullptr), text, std::nullopt,
                 Json{{"command", "find-integral"}, {"degrees", sweep}, {"exists", exists_any}});
        });
    }

    std::vector<std::string> args = merge_flag_values(argc, argv);
    std::reverse(args.begin(), args.end());  // CLI11's vector overload expects reversed args
    try {
        app.parse(std::move(args));
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 1;
    } catch (const mpk::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const mpk::UnboundVariableError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const mpk::NanError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const mpk::UnsupportedExpressionError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const mpk::DomainError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const mpk::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return exit_status;
}
