// io.hpp — JSON file formats: spectra, quasi-classical ensembles, coherent
// mixtures, joint distributions and campaign configurations.

#pragma once

#include "qcb/afw.hpp"
#include "qcb/classical.hpp"
#include "qcb/common.hpp"
#include "qcb/hamiltonians.hpp"
#include "qcb/oscillator.hpp"

#include <json.hpp>

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace qcb {

// --------------------------- spectrum ----------------------------------------
// {"kind":"arithmetic","step":1.0} or {"kind":"explicit","values":[...]}

inline Spectrum spectrum_from_json(const nlohmann::json& j) {
    try {
        const std::string kind = j.at("kind").get<std::string>();
        if (kind == "arithmetic") return Spectrum::arithmetic(j.at("step").get<double>());
        if (kind == "explicit") {
            return Spectrum::explicit_values(j.at("values").get<std::vector<double>>());
        }
        throw ConfigError("spectrum_from_json: unknown kind '" + kind + "'");
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("spectrum_from_json: ") + e.what());
    }
}

inline nlohmann::json spectrum_to_json(const Spectrum& spec) {
    if (spec.is_arithmetic()) return {{"kind", "arithmetic"}, {"step", spec.step()}};
    if (spec.is_finite()) return {{"kind", "explicit"}, {"values", spec.values()}};
    throw ConfigError("spectrum_to_json: generator spectra are not serializable");
}

// --------------------------- ensemble ----------------------------------------
// {"dim":4,"labels":[...],"weights":[...],"states":["fock:0","coherent:1.0,-0.5",
//  [[[re,im],...],...], ...]}

inline Matrix matrix_from_json(const nlohmann::json& j) {
    const std::size_t rows = j.size();
    if (rows == 0) throw ConfigError("matrix_from_json: empty matrix");
    Matrix m(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(rows));
    for (std::size_t r = 0; r < rows; ++r) {
        if (j[r].size() != rows) throw ConfigError("matrix_from_json: matrix must be square");
        for (std::size_t c = 0; c < rows; ++c) {
            const auto& cell = j[r][c];
            if (cell.size() != 2) throw ConfigError("matrix_from_json: cell must be [re, im]");
            m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
                Complex(cell[0].get<double>(), cell[1].get<double>());
        }
    }
    return m;
}

inline Matrix named_state(const std::string& name, Eigen::Index dim) {
    if (name.rfind("fock:", 0) == 0) {
        const int n = std::stoi(name.substr(5));
        if (n < 0 || n >= dim) throw ConfigError("named_state: fock index out of range");
        Matrix m = Matrix::Zero(dim, dim);
        m(n, n) = 1.0;
        return m;
    }
    if (name.rfind("coherent:", 0) == 0) {
        const std::string args = name.substr(9);
        const std::size_t comma = args.find(',');
        if (comma == std::string::npos) throw ConfigError("named_state: coherent needs re,im");
        const Complex z(std::stod(args.substr(0, comma)), std::stod(args.substr(comma + 1)));
        const Vector v = coherent_vector(z, dim);
        return v * v.adjoint();
    }
    throw ConfigError("named_state: unknown constructor '" + name + "'");
}

inline QcEnsemble ensemble_from_json(const nlohmann::json& j) {
    try {
        QcEnsemble ens;
        ens.labels = j.at("labels").get<std::vector<std::string>>();
        ens.weights = j.at("weights").get<std::vector<double>>();
        const Eigen::Index dim = j.value("dim", 0);
        for (const auto& entry : j.at("states")) {
            if (entry.is_string()) {
                if (dim < 1) throw ConfigError("ensemble_from_json: named states need \"dim\"");
                ens.states.push_back(named_state(entry.get<std::string>(), dim));
            } else {
                ens.states.push_back(matrix_from_json(entry));
            }
        }
        ens.validate();
        return ens;
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("ensemble_from_json: ") + e.what());
    }
}

// --------------------------- coherent mixture ---------------------------------
// {"modes":2,"atoms":[{"z":[[re,im],[re,im]],"w":0.5},...],"cutoff":16}

inline CoherentMixture mixture_from_json(const nlohmann::json& j) {
    try {
        const int modes = j.at("modes").get<int>();
        std::vector<CoherentAtom> atoms;
        for (const auto& aj : j.at("atoms")) {
            CoherentAtom atom;
            atom.weight = aj.at("w").get<double>();
            for (const auto& zj : aj.at("z")) {
                if (zj.size() != 2) throw ConfigError("mixture_from_json: z entry must be [re, im]");
                atom.z.emplace_back(zj[0].get<double>(), zj[1].get<double>());
            }
            atoms.push_back(std::move(atom));
        }
        return CoherentMixture::make(modes, std::move(atoms), j.value("cutoff", 0));
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("mixture_from_json: ") + e.what());
    }
}

// --------------------------- joint distribution --------------------------------
// {"arity":2,"entries":[[i,j,p],...]}

inline JointDistribution distribution_from_json(const nlohmann::json& j) {
    try {
        const int arity = j.at("arity").get<int>();
        std::vector<std::pair<std::vector<int>, double>> list;
        for (const auto& entry : j.at("entries")) {
            if (static_cast<int>(entry.size()) != arity + 1) {
                throw ConfigError("distribution_from_json: entry length must be arity + 1");
            }
            std::vector<int> tuple(static_cast<std::size_t>(arity));
            for (int k = 0; k < arity; ++k) tuple[static_cast<std::size_t>(k)] = entry[k].get<int>();
            list.emplace_back(std::move(tuple), entry[arity].get<double>());
        }
        return JointDistribution::from_entries(arity, list);
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("distribution_from_json: ") + e.what());
    }
}

// --------------------------- file helpers --------------------------------------

inline nlohmann::json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("load_json_file: cannot open '" + path + "'");
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError("load_json_file: parse error in '" + path + "': " + e.what());
    }
    return j;
}

inline void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ConfigError("write_text_file: cannot open '" + path + "'");
    out << text;
}

} // namespace qcb
