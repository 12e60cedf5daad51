#include "dqw/serialize.hpp"

#include <stdexcept>

namespace dqw {

json to_json(const Scalar& s) {
    json j;
    j["re"] = s.re().get_str();
    if (s.im() != 0)
        j["im"] = s.im().get_str();
    return j;
}

Scalar scalar_from_json(const json& j) {
    mpq_class re(j.at("re").get<std::string>());
    re.canonicalize();
    mpq_class im(0);
    if (j.contains("im")) {
        im = mpq_class(j.at("im").get<std::string>());
        im.canonicalize();
    }
    return Scalar(re, im);
}

json to_json(const SpacePtr& sp) {
    json j;
    j["names"] = sp->names;
    j["base_rank"] = sp->base_rank;
    return j;
}

SpacePtr space_from_json(const json& j) {
    return Space::named(j.at("names").get<std::vector<std::string>>(),
                        j.at("base_rank").get<int>());
}

json to_json(const Polynomial& p) {
    json terms = json::array();
    for (const auto& [I, c] : p.terms()) {
        json t;
        t["exp"] = I;
        t["coeff"] = to_json(c);
        terms.push_back(t);
    }
    json j;
    j["terms"] = terms;
    return j;
}

Polynomial polynomial_from_json(const json& j, const SpacePtr& space) {
    Polynomial p(space);
    for (const auto& t : j.at("terms"))
        p.add_term(t.at("exp").get<MultiIndex>(), scalar_from_json(t.at("coeff")));
    return p;
}

json to_json(const DiffOp& d) {
    json terms = json::array();
    for (const auto& [J, c] : d.terms()) {
        json t;
        t["sym"] = J;
        t["coeff"] = to_json(c);
        terms.push_back(t);
    }
    json j;
    j["terms"] = terms;
    return j;
}

DiffOp diffop_from_json(const json& j, const SpacePtr& space) {
    DiffOp d(space);
    for (const auto& t : j.at("terms"))
        d.add_term(t.at("sym").get<MultiIndex>(), polynomial_from_json(t.at("coeff"), space));
    return d;
}

json to_json(const MultiDiffOp& phi) {
    json j;
    j["arity"] = phi.arity();
    j["source"] = to_json(phi.source());
    j["target"] = to_json(phi.target());
    json terms = json::array();
    for (const auto& [jets, v] : phi.terms()) {
        json t;
        t["jets"] = jets;
        t["value"] = to_json(v);
        terms.push_back(t);
    }
    j["terms"] = terms;
    return j;
}

MultiDiffOp multidiffop_from_json(const json& j) {
    SpacePtr source = space_from_json(j.at("source"));
    SpacePtr target = space_from_json(j.at("target"));
    MultiDiffOp phi(j.at("arity").get<int>(), source, target);
    for (const auto& t : j.at("terms"))
        phi.add_term(t.at("jets").get<ArgJets>(), diffop_from_json(t.at("value"), target));
    return phi;
}

json to_json(const StarProduct& S) {
    json j;
    j["space"] = to_json(S.space());
    j["order_cap"] = S.order_cap();
    if (S.generators()) {
        json fields = json::array();
        for (const auto& X : S.generators()->fields)
            fields.push_back(to_json(X));
        json matrix = json::array();
        for (const auto& row : S.generators()->matrix) {
            json r = json::array();
            for (const auto& c : row)
                r.push_back(to_json(c));
            matrix.push_back(r);
        }
        j["fields"] = fields;
        j["matrix"] = matrix;
    } else {
        json cochains = json::array();
        for (int r = 0; r <= S.order_cap(); ++r)
            cochains.push_back(to_json(S.cochain(r)));
        j["cochains"] = cochains;
    }
    return j;
}

StarProduct star_from_json(const json& j) {
    SpacePtr space = space_from_json(j.at("space"));
    int cap = j.at("order_cap").get<int>();
    if (j.contains("fields")) {
        std::vector<DiffOp> fields;
        for (const auto& f : j.at("fields"))
            fields.push_back(diffop_from_json(f, space));
        std::vector<std::vector<Scalar>> matrix;
        for (const auto& row : j.at("matrix")) {
            std::vector<Scalar> r;
            for (const auto& c : row)
                r.push_back(scalar_from_json(c));
            matrix.push_back(std::move(r));
        }
        return exp_star(fields, matrix, cap);
    }
    std::vector<MultiDiffOp> cochains;
    for (const auto& c : j.at("cochains"))
        cochains.push_back(multidiffop_from_json(c));
    return StarProduct(space, std::move(cochains));
}

json to_json(const KoszulCochain& phi) {
    json j;
    j["m"] = phi.m;
    j["degree"] = phi.degree;
    json comps = json::array();
    for (const auto& [T, v] : phi.comps) {
        json c;
        c["tuple"] = T;
        c["value"] = to_json(v);
        c["render"] = v.str();
        comps.push_back(c);
    }
    j["comps"] = comps;
    return j;
}

json sp_bracket_to_json(const SemiPoissonBracket& br) {
    json j;
    j["cochain"] = to_json(br.cochain());
    j["fiber_preserving"] = br.is_fiber_preserving();
    j["natural"] = br.is_natural();
    return j;
}

SemiPoissonBracket sp_bracket_from_json(const json& j, const StarProduct& S) {
    return SemiPoissonBracket::checked(multidiffop_from_json(j.at("cochain")), S);
}

json bimodule_to_json(const BimoduleStructure& B) {
    json j;
    j["order_cap"] = B.order_cap();
    j["star"] = to_json(B.star());
    j["total"] = to_json(B.total_space());
    json left = json::array(), right = json::array();
    for (int r = 0; r <= B.order_cap(); ++r) {
        left.push_back(to_json(B.left().cochain(r)));
        right.push_back(to_json(B.right().cochain(r)));
    }
    j["left"] = left;
    j["right"] = right;
    return j;
}

} // namespace dqw
