#include "qmf/cli.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "qmf/donaldson.hpp"
#include "qmf/elliptic.hpp"
#include "qmf/errors.hpp"
#include "qmf/modular.hpp"
#include "qmf/serialize.hpp"

namespace qmf::cli {

namespace {

using nlohmann::json;

void emit_error(std::ostream& err, const std::string& kind, const std::string& what)
{
    json j;
    j["error"] = kind;
    j["what"] = what;
    err << j.dump() << "\n";
}

// uniform mapping of library exceptions to exit codes
template <typename Fn>
int guarded(std::ostream& err, Fn&& fn)
{
    try {
        return fn();
    } catch (const io_error& e) {
        emit_error(err, "input", e.what());
        return 2;
    } catch (const validation_error& e) {
        emit_error(err, "validation", e.what());
        return 2;
    } catch (const order_error& e) {
        emit_error(err, "order", e.what());
        return 2;
    } catch (const math_error& e) {
        emit_error(err, "input", e.what());
        return 2;
    } catch (const internal_error& e) {
        emit_error(err, "internal", e.what());
        return 2;
    } catch (const std::exception& e) {
        // wrong-shape JSON and the like surface as library exceptions
        emit_error(err, "input", e.what());
        return 2;
    }
}

std::string read_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in) {
        throw io_error("cannot open file: " + path);
    }
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

void dump_series(const QSeries& s, const std::string& format, std::ostream& out)
{
    if (format == "json") {
        out << qseries_json(s).dump() << "\n";
    } else if (format == "text") {
        out << qseries_text(s);
    } else {
        throw io_error("unknown format: " + format + " (expected text or json)");
    }
}

} // namespace

int cmd_series(const std::string& name, int order, const std::string& format,
               std::ostream& out, std::ostream& err)
{
    return guarded(err, [&] {
        if (order < 1) {
            throw io_error("order must be >= 1");
        }
        dump_series(named_form(name, order + 1).truncated(24 * (order + 1)), format, out);
        return 0;
    });
}

int cmd_verify(const std::string& suite, const VerifyOptions& opt, std::ostream& out,
               std::ostream& err)
{
    return guarded(err, [&] {
        const auto reports = run_suites(suite, opt);
        out << render_reports(reports);
        for (const auto& rep : reports) {
            if (!rep.all_pass()) {
                return 1;
            }
        }
        return 0;
    });
}

int cmd_eval(const std::string& path, const std::string& mode, int qorder, int lambda_order,
             int d_order, std::ostream& out, std::ostream& err)
{
    return guarded(err, [&] {
        const ManifoldData data = manifold_from_json(parse_json(read_file(path)));
        const auto diags = validate_manifold(data);
        json warnings = json::array();
        for (const auto& d : diags) {
            if (d.severity == Severity::Error) {
                emit_error(err, "validation", d.code + ": " + d.message);
                return 2;
            }
            warnings.push_back(d.code + ": " + d.message);
        }
        if (!warnings.empty()) {
            json w;
            w["warnings"] = warnings;
            err << w.dump() << "\n";
        }
        const ClosedFormInvariant cf = evaluate_bracket(data, qorder);
        if (mode == "closed") {
            out << closed_form_json(cf).dump() << "\n";
        } else if (mode == "taylor") {
            const std::vector<int> d_orders(static_cast<std::size_t>(data.rank), d_order);
            const MultiPoly p = taylor_expand(cf, lambda_order, d_orders);
            std::vector<std::string> names = {"lambda"};
            for (long i = 1; i <= data.rank; ++i) {
                names.push_back("d" + std::to_string(i));
            }
            out << multipoly_json(p, names).dump() << "\n";
        } else {
            throw io_error("unknown mode: " + mode + " (expected closed or taylor)");
        }
        return 0;
    });
}

int cmd_blowup(const std::string& path, const std::string& side, std::ostream& out,
               std::ostream& err)
{
    return guarded(err, [&] {
        const ManifoldData data = manifold_from_json(parse_json(read_file(path)));
        BlowupSide s;
        if (side == "w") {
            s = BlowupSide::W;
        } else if (side == "w+e") {
            s = BlowupSide::WPlusE;
        } else {
            throw io_error("unknown side: " + side + " (expected w or w+e)");
        }
        out << manifold_json(blow_up(data, s)).dump() << "\n";
        return 0;
    });
}

int cmd_convert(const std::string& path, const std::string& direction, std::ostream& out,
                std::ostream& err)
{
    return guarded(err, [&] {
        const json j = parse_json(read_file(path));
        if (direction == "f2p") {
            const ManifoldData data = manifold_from_json(j);
            require_valid(data);
            std::vector<PKRecord> pks;
            for (const auto& rec : data.classes) {
                pks.push_back(PK_from_fK(rec));
            }
            out << pk_manifold_json(data, pks).dump() << "\n";
        } else if (direction == "p2f") {
            auto [data, pks] = pk_manifold_from_json(j);
            for (const auto& pk : pks) {
                data.classes.push_back(fK_from_PK(pk));
            }
            require_valid(data);
            out << manifold_json(data).dump() << "\n";
        } else {
            throw io_error("unknown direction: " + direction + " (expected f2p or p2f)");
        }
        return 0;
    });
}

int cmd_conjecture_fk(long chi, long sigma, const std::string& sw, int order,
                      const std::string& format, std::ostream& out, std::ostream& err)
{
    return guarded(err, [&] {
        dump_series(conjectural_fK(chi, sigma, parse_rational(sw), order), format, out);
        return 0;
    });
}

int cmd_ab_series(const std::string& route, int order, std::ostream& out, std::ostream& err)
{
    return guarded(err, [&] {
        if (order < 1) {
            throw io_error("order must be >= 1");
        }
        ABPair ab{UniSeries(0), UniSeries(0), ABRoute::Elliptic};
        if (route == "elliptic") {
            ab = ab_from_elliptic(order);
        } else if (route == "reversion") {
            ab = ab_from_qseries(order);
        } else {
            throw io_error("unknown route: " + route + " (expected elliptic or reversion)");
        }
        out << "# ab-series route=" << route << " order=" << order << "\n";
        out << "# k\tA_k\tB_k\n";
        for (int k = 0; k < order; ++k) {
            out << k << "\t" << rational_str(ab.a.coeff(k).re()) << "\t"
                << rational_str(ab.b.coeff(k).re()) << "\n";
        }
        return 0;
    });
}

} // namespace qmf::cli
