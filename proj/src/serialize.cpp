#include "qmf/serialize.hpp"

#include <sstream>

#include "qmf/errors.hpp"

namespace qmf {

using nlohmann::json;

namespace {

json gaussian_json(const Gaussian& g)
{
    return json::array({rational_str(g.re()), rational_str(g.im())});
}

Gaussian gaussian_from_json(const json& j)
{
    if (!j.is_array() || j.size() != 2 || !j[0].is_string() || !j[1].is_string()) {
        throw io_error("expected a [\"re\",\"im\"] pair of rational strings");
    }
    return Gaussian(parse_rational(j[0].get<std::string>()),
                    parse_rational(j[1].get<std::string>()));
}

std::vector<long> long_vector(const json& j, const char* what)
{
    if (!j.is_array()) {
        throw io_error(std::string(what) + " must be an array of integers");
    }
    std::vector<long> v;
    for (const auto& e : j) {
        if (!e.is_number_integer()) {
            throw io_error(std::string(what) + " must contain integers only");
        }
        v.push_back(e.get<long>());
    }
    return v;
}

std::vector<Rational> rational_vector(const json& j, const char* what)
{
    if (!j.is_array()) {
        throw io_error(std::string(what) + " must be an array of rational strings");
    }
    std::vector<Rational> v;
    for (const auto& e : j) {
        if (!e.is_string()) {
            throw io_error(std::string(what) + " entries must be strings like \"p/q\"");
        }
        v.push_back(parse_rational(e.get<std::string>()));
    }
    return v;
}

json rational_vector_json(const std::vector<Rational>& v)
{
    json a = json::array();
    for (const auto& r : v) {
        a.push_back(rational_str(r));
    }
    return a;
}

const json& field(const json& j, const char* name)
{
    auto it = j.find(name);
    if (it == j.end()) {
        throw io_error(std::string("missing field \"") + name + "\"");
    }
    return *it;
}

} // namespace

std::string qseries_text(const QSeries& s)
{
    std::ostringstream os;
    os << "# q-series grading=1/24";
    if (s.is_exact()) {
        os << " exact";
    } else {
        os << " trunc=" << s.trunc() << "/24";
    }
    os << "\n";
    for (const auto& [j, c] : s.terms()) {
        os << j << "/24\t" << rational_str(c.re()) << "\t" << rational_str(c.im()) << "\n";
    }
    return os.str();
}

json qseries_json(const QSeries& s)
{
    json terms = json::array();
    for (const auto& [j, c] : s.terms()) {
        terms.push_back(json::array({j, rational_str(c.re()), rational_str(c.im())}));
    }
    json out;
    out["grading"] = 24;
    out["terms"] = std::move(terms);
    if (!s.is_exact()) {
        out["trunc"] = s.trunc();
    }
    return out;
}

QSeries qseries_from_json(const json& j)
{
    if (field(j, "grading") != 24) {
        throw io_error("unsupported q-series grading");
    }
    QSeries s = QSeries::zero(j.contains("trunc") ? j["trunc"].get<std::int64_t>()
                                                  : QSeries::kExact);
    for (const auto& t : field(j, "terms")) {
        if (!t.is_array() || t.size() != 3 || !t[0].is_number_integer()) {
            throw io_error("q-series terms must be [j,\"re\",\"im\"]");
        }
        s.set(t[0].get<std::int64_t>(),
              Gaussian(parse_rational(t[1].get<std::string>()),
                       parse_rational(t[2].get<std::string>())));
    }
    return s;
}

json manifold_json(const ManifoldData& data)
{
    json classes = json::array();
    for (const auto& rec : data.classes) {
        json c;
        c["K"] = rec.k;
        c["d"] = rec.d;
        c["f"] = rational_vector_json(rec.f);
        classes.push_back(std::move(c));
    }
    json out;
    out["b_plus"] = data.b_plus;
    out["rank"] = data.rank;
    out["Q"] = data.q;
    out["w"] = data.w;
    out["classes"] = std::move(classes);
    return out;
}

namespace {

ManifoldData manifold_header_from_json(const json& j)
{
    ManifoldData data;
    if (!field(j, "b_plus").is_number_integer() || !field(j, "rank").is_number_integer()) {
        throw io_error("b_plus and rank must be integers");
    }
    data.b_plus = j["b_plus"].get<long>();
    data.rank = j["rank"].get<long>();
    const json& q = field(j, "Q");
    if (!q.is_array()) {
        throw io_error("Q must be an array of integer rows");
    }
    for (const auto& row : q) {
        data.q.push_back(long_vector(row, "Q row"));
    }
    data.w = long_vector(field(j, "w"), "w");
    return data;
}

} // namespace

ManifoldData manifold_from_json(const json& j)
{
    ManifoldData data = manifold_header_from_json(j);
    for (const auto& c : field(j, "classes")) {
        BasicClassRecord rec;
        rec.k = long_vector(field(c, "K"), "K");
        if (!field(c, "d").is_number_integer()) {
            throw io_error("d must be an integer");
        }
        rec.d = c["d"].get<long>();
        rec.f = rational_vector(field(c, "f"), "f");
        data.classes.push_back(std::move(rec));
    }
    return data;
}

json pk_manifold_json(const ManifoldData& base, const std::vector<PKRecord>& pks)
{
    json classes = json::array();
    for (const auto& pk : pks) {
        json c;
        c["K"] = pk.k;
        c["d"] = pk.d;
        c["P"] = rational_vector_json(pk.p);
        classes.push_back(std::move(c));
    }
    json out;
    out["b_plus"] = base.b_plus;
    out["rank"] = base.rank;
    out["Q"] = base.q;
    out["w"] = base.w;
    out["classes"] = std::move(classes);
    return out;
}

std::pair<ManifoldData, std::vector<PKRecord>> pk_manifold_from_json(const json& j)
{
    ManifoldData data = manifold_header_from_json(j);
    std::vector<PKRecord> pks;
    for (const auto& c : field(j, "classes")) {
        PKRecord pk;
        pk.k = long_vector(field(c, "K"), "K");
        if (!field(c, "d").is_number_integer()) {
            throw io_error("d must be an integer");
        }
        pk.d = c["d"].get<long>();
        pk.p = rational_vector(field(c, "P"), "P");
        pks.push_back(std::move(pk));
    }
    return {std::move(data), std::move(pks)};
}

json closed_form_json(const ClosedFormInvariant& cf)
{
    json terms = json::array();
    for (const auto& term : cf.terms) {
        json poly = json::array();
        for (const auto& [key, c] : term.poly.terms()) {
            const int l = static_cast<int>(key & 0xffff);
            const int qd = static_cast<int>((key >> 16) & 0xffff);
            const int kd = static_cast<int>((key >> 32) & 0xffff);
            if ((key >> 48) != 0) {
                throw internal_error("closed-form serialization is three-slot only");
            }
            poly.push_back(json::array({l, qd, kd, gaussian_json(c)}));
        }
        json t;
        t["sector"] = term.sector;
        t["prefactor"] = gaussian_json(term.prefactor);
        t["K"] = term.k;
        t["kd_mult"] = term.kd_imag ? "i" : "1";
        t["poly"] = std::move(poly);
        terms.push_back(std::move(t));
    }
    json out;
    out["Q"] = cf.q;
    out["terms"] = std::move(terms);
    return out;
}

ClosedFormInvariant closed_form_from_json(const json& j)
{
    ClosedFormInvariant cf;
    for (const auto& row : field(j, "Q")) {
        cf.q.push_back(long_vector(row, "Q row"));
    }
    for (const auto& t : field(j, "terms")) {
        CFTerm term;
        term.sector = field(t, "sector").get<int>();
        term.prefactor = gaussian_from_json(field(t, "prefactor"));
        term.k = long_vector(field(t, "K"), "K");
        const std::string mult = field(t, "kd_mult").get<std::string>();
        if (mult != "1" && mult != "i") {
            throw io_error("kd_mult must be \"1\" or \"i\"");
        }
        term.kd_imag = (mult == "i");
        for (const auto& p : field(t, "poly")) {
            if (!p.is_array() || p.size() != 4) {
                throw io_error("poly entries must be [l,qd,kd,[\"re\",\"im\"]]");
            }
            term.poly.add(p[0].get<int>(), p[1].get<int>(), p[2].get<int>(), 0,
                          gaussian_from_json(p[3]));
        }
        cf.terms.push_back(std::move(term));
    }
    return cf;
}

json multipoly_json(const MultiPoly& p, const std::vector<std::string>& names)
{
    json terms = json::array();
    for (const auto& [key, c] : p.terms()) {
        terms.push_back(json::array({MultiPoly::unpack(key, p.nvars()), gaussian_json(c)}));
    }
    json out;
    out["vars"] = names;
    out["orders"] = p.orders();
    out["terms"] = std::move(terms);
    return out;
}

json parse_json(const std::string& text)
{
    json j = json::parse(text, nullptr, false);
    if (j.is_discarded()) {
        throw io_error("malformed JSON input");
    }
    return j;
}

} // namespace qmf
