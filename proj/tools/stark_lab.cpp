#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <thread>

#include "starklab/forms.hpp"
#include "starklab/numfld.hpp"
#include "starklab/sublat.hpp"
#include "starklab/verify.hpp"

using namespace starklab;
using nlohmann::json;

namespace {

struct Common {
    int bits = 128;
    int order = 2;
    int jobs = 1;
    std::string out;
};

void emit(const Common& opt, const json& report) {
    if (opt.out.empty()) return;
    std::ofstream f(opt.out);
    if (!f) throw InputError("cannot write " + opt.out);
    f << report.dump(2) << "\n";
}

std::string ball_text(const Ball& b) { return b.mid_string(30) + " +/- " + b.rad_string(); }

std::string cball_text(const CBall& z) {
    if (z.im.is_exact() && z.im.contains_zero()) return ball_text(z.re);
    return "(" + ball_text(z.re) + ") + i (" + ball_text(z.im) + ")";
}

int cmd_identity(const Common& opt, int p, int m) {
    IntGR x = lemma41_element(p, m);
    HyperplaneSet hs = enumerate_omega_star(p, m);
    std::cout << "p = " << p << ", m = " << m << "\n";
    std::cout << "index-p subgroups: " << hs.proper_count() << "\n";
    std::cout << "weighted norm sum = " << x[0].get_str() << " (constant)\n";
    emit(opt, {{"p", p}, {"m", m}, {"subgroups", hs.proper_count()}, {"constant", x[0].get_str()}});
    return 0;
}

int cmd_lvalue(const Common& opt, long modulus, const std::vector<long>& kernel, int chi, const PlaceSets& st) {
    AbelianRealization r = AbelianRealization::from_kernel(modulus, kernel);
    if (chi < 0 || chi >= r.group->order()) throw InputError("character index out of range");
    LJet l = l_jet(r, chi, st, opt.order, opt.bits);
    std::cout << "group " << r.group->to_string() << ", conductor " << r.conductor(chi)
              << (r.is_even(chi) ? ", even" : ", odd") << "\n";
    std::cout << "order of vanishing at 0: " << l.order << "\n";
    json coeffs = json::array();
    for (size_t k = 0; k < l.jet.c.size(); ++k) {
        std::cout << "  s^" << k << ": " << cball_text(l.jet.c[k]) << "\n";
        coeffs.push_back({{"re", l.jet.c[k].re.mid_string(30)}, {"im", l.jet.c[k].im.mid_string(30)},
                          {"rad", l.jet.max_radius()}});
    }
    emit(opt, {{"order", l.order}, {"coefficients", coeffs}, {"cutoff", l.params.cutoff},
               {"corrections", l.params.corrections}});
    return 0;
}

int cmd_stickelberger(const Common& opt, long disc, int r_order, const PlaceSets& st) {
    AbelianRealization r = disc == 1 ? AbelianRealization::rational() : AbelianRealization::multiquadratic({disc});
    if (r_order == 0) {
        RatGR theta = stickelberger_exact(r, st);
        std::cout << "theta = " << to_json_string(theta) << "\n";
        emit(opt, json::parse(to_json_string(theta)));
    } else {
        BallGR theta = stickelberger(r, st, r_order, opt.bits);
        for (int x = 0; x < theta.size(); ++x) std::cout << "  [" << x << "] " << ball_text(theta[x]) << "\n";
        emit(opt, json::parse(to_json_string(theta)));
    }
    return 0;
}

int cmd_field(const Common& opt, long disc, const std::string& what, const PlaceSets& st) {
    json report = {{"disc", disc}};
    if (what == "classgroup") {
        ClassGroup cg(disc);
        std::cout << "class number " << cg.order() << " (narrow " << cg.narrow_order() << "), structure "
                  << cg.group().to_string() << "\n";
        json reps = json::array();
        for (int x = 0; x < cg.order(); ++x) {
            const Form& f = cg.representative(x);
            std::cout << "  (" << f.a << ", " << f.b << ", " << f.c << ")\n";
            reps.push_back({f.a, f.b, f.c});
        }
        report["class_number"] = cg.order();
        report["narrow_class_number"] = cg.narrow_order();
        report["forms"] = reps;
    } else if (what == "unit") {
        if (disc < 0) {
            std::cout << "roots of unity: " << roots_of_unity_count(disc) << "\n";
            report["roots_of_unity"] = roots_of_unity_count(disc);
        } else {
            FundamentalUnit u = fundamental_unit(disc);
            std::cout << "fundamental unit " << u.unit.to_string() << ", norm " << u.norm << "\n";
            std::cout << "regulator " << ball_text(u.log(opt.bits)) << "\n";
            report["unit"] = u.unit.to_string();
            report["norm"] = u.norm;
            report["regulator"] = u.log(opt.bits).mid_string(30);
        }
    } else if (what == "sunits") {
        SUnitLattice u = s_unit_lattice(disc, st, opt.bits);
        std::cout << "rank " << u.rank() << "\n";
        json basis = json::array();
        for (int i = 0; i < u.rank(); ++i) {
            std::cout << "  " << u.element(i).to_string() << "\n";
            basis.push_back(u.element(i).to_string());
        }
        report["basis"] = basis;
    } else if (what == "rayclass") {
        RayClassData rc = ray_class(disc, st);
        std::cout << "order " << rc.order() << ", invariants";
        json inv = json::array();
        for (const auto& d : rc.cl.invariants) {
            std::cout << " " << d.get_str();
            inv.push_back(d.get_str());
        }
        std::cout << "\n";
        report["order"] = rc.order();
        report["invariants"] = inv;
    } else {
        throw InputError("unknown field query: " + what);
    }
    emit(opt, report);
    return 0;
}

Scenario with_overrides(Scenario s, const Common& opt, bool bits_set, bool order_set) {
    if (bits_set) s.bits = opt.bits;
    if (order_set) s.order = opt.order;
    return s;
}

int cmd_verify(const Common& opt, const std::string& path, bool bits_set, bool order_set) {
    Certificate c = run(with_overrides(load_scenario(path), opt, bits_set, order_set));
    std::cout << c.summary();
    emit(opt, c.to_json());
    return c.exit_code();
}

int worst(int a, int b) {
    static const int rank[] = {0, 3, 5, 1, 6, 2};  // indexed by exit code
    return rank[a] >= rank[b] ? a : b;
}

int cmd_sweep(const Common& opt, const std::string& dir, bool bits_set, bool order_set) {
    std::vector<std::string> files;
    for (const auto& e : std::filesystem::directory_iterator(dir))
        if (e.path().extension() == ".json") files.push_back(e.path().string());
    std::sort(files.begin(), files.end());
    std::vector<json> certs(files.size());
    std::vector<std::string> text(files.size());
    std::vector<int> codes(files.size(), 0);
    std::atomic<size_t> next{0};
    auto worker = [&] {
        for (size_t i = next++; i < files.size(); i = next++) {
            try {
                Certificate c = run(with_overrides(load_scenario(files[i]), opt, bits_set, order_set));
                certs[i] = c.to_json();
                text[i] = c.summary();
                codes[i] = c.exit_code();
            } catch (const InputError& e) {
                certs[i] = {{"file", files[i]}, {"error", e.what()}, {"exit_code", kExitInput}};
                text[i] = files[i] + "\n  input error: " + e.what() + "\n";
                codes[i] = kExitInput;
            }
        }
    };
    std::vector<std::thread> pool;
    for (int j = 0; j < std::max(1, opt.jobs); ++j) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
    int code = 0;
    for (size_t i = 0; i < files.size(); ++i) {
        std::cout << text[i];
        code = worst(code, codes[i]);
    }
    std::cout << files.size() << " scenarios, exit " << code << "\n";
    json report = {{"certificates", certs}, {"exit_code", code}};
    emit(opt, report);
    return code;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Stark unit and Stickelberger computations"};
    app.require_subcommand(1);
    app.fallthrough();
    Common opt;
    auto* bits_opt = app.add_option("--bits", opt.bits, "working precision in bits")->check(CLI::Range(32, 4096));
    auto* order_opt = app.add_option("--order", opt.order, "jet truncation order")->check(CLI::Range(1, kMaxJetOrder));
    app.add_option("--jobs", opt.jobs, "parallel scenarios for sweep")->check(CLI::Range(1, 256));
    app.add_option("--out", opt.out, "write a JSON report here");

    int p = 2, m = 2;
    auto* identity = app.add_subcommand("identity", "weighted subgroup norm identity");
    identity->add_option("--p", p)->required();
    identity->add_option("--m", m)->required();

    long modulus = 1;
    int chi = 0;
    std::vector<long> kernel, S, T;
    auto* lvalue = app.add_subcommand("lvalue", "jet of L_{S,T}(chi, s) at s = 0");
    lvalue->add_option("--modulus", modulus)->required();
    lvalue->add_option("--kernel", kernel, "generators of the kernel of the Artin map")->delimiter(',');
    lvalue->add_option("--char-index", chi)->required();
    lvalue->add_option("--S", S, "finite primes of S")->delimiter(',');
    lvalue->add_option("--T", T, "primes of T")->delimiter(',');

    long disc = 1;
    int r_order = 0;
    auto* stick = app.add_subcommand("stickelberger", "Stickelberger element of Q or Q(sqrt D)");
    stick->add_option("--disc", disc)->required();
    stick->add_option("--r", r_order, "order of the derivative");
    stick->add_option("--S", S)->delimiter(',');
    stick->add_option("--T", T)->delimiter(',');

    std::string what;
    auto* field = app.add_subcommand("field", "arithmetic of Q(sqrt D)");
    field->add_option("--disc", disc)->required();
    field->add_option("query", what, "classgroup | unit | sunits | rayclass")->required();
    field->add_option("--S", S)->delimiter(',');
    field->add_option("--T", T)->delimiter(',');

    std::string path;
    auto* verify = app.add_subcommand("verify", "run one scenario file");
    verify->add_option("scenario", path)->required()->check(CLI::ExistingFile);
    auto* sweep = app.add_subcommand("sweep", "run every scenario in a directory");
    sweep->add_option("dir", path)->required()->check(CLI::ExistingDirectory);

    CLI11_PARSE(app, argc, argv);
    const bool bits_set = bits_opt->count() > 0;
    const bool order_set = order_opt->count() > 0;
    try {
        const PlaceSets st{S, T};
        if (*identity) return cmd_identity(opt, p, m);
        if (*lvalue) return cmd_lvalue(opt, modulus, kernel, chi, st);
        if (*stick) return cmd_stickelberger(opt, disc, r_order, st);
        if (*field) return cmd_field(opt, disc, what, st);
        if (*verify) return cmd_verify(opt, path, bits_set, order_set);
        if (*sweep) return cmd_sweep(opt, path, bits_set, order_set);
    } catch (const InputError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kExitInput;
    } catch (const DatumError& e) {
        std::cerr << "datum error: " << e.what() << "\n";
        return kExitDatum;
    } catch (const UndecidedError& e) {
        std::cerr << "undecided (radius " << e.radius() << "): " << e.what() << "\n";
        return kExitUndecided;
    } catch (const PrecisionError& e) {
        std::cerr << "undecided: " << e.what() << "\n";
        return kExitUndecided;
    } catch (const UnresolvedOrderError& e) {
        std::cerr << "undecided: " << e.what() << "\n";
        return kExitUndecided;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitCapacity;
    }
    return 0;
}
