// Copyright 2026 The FlowQ-Net Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "flowq/qsim/pauli.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace flowq {

char pauli_char(Pauli p)
{
    switch (p) {
    case Pauli::I:
        return 'I';
    case Pauli::X:
        return 'X';
    case Pauli::Y:
        return 'Y';
    case Pauli::Z:
        return 'Z';
    }
    throw std::logic_error("unreachable Pauli label");
}

Pauli pauli_from_char(char c)
{
    switch (c) {
    case 'I':
        return Pauli::I;
    case 'X':
        return Pauli::X;
    case 'Y':
        return Pauli::Y;
    case 'Z':
        return Pauli::Z;
    default:
        throw std::invalid_argument(std::string("invalid Pauli label '") + c + "'");
    }
}

PauliString::PauliString(int n_qubits)
{
    if (n_qubits < 1 || n_qubits > 63) {
        throw std::invalid_argument("PauliString: qubit count must be in [1, 63]");
    }
    ops_.assign(static_cast<std::size_t>(n_qubits), Pauli::I);
}

PauliString::PauliString(std::vector<Pauli> ops) : ops_(std::move(ops))
{
    if (ops_.empty() || ops_.size() > 63) {
        throw std::invalid_argument("PauliString: qubit count must be in [1, 63]");
    }
}

PauliString PauliString::parse(std::string_view text)
{
    std::vector<Pauli> ops;
    ops.reserve(text.size());
    for (char c : text) {
        ops.push_back(pauli_from_char(c));
    }
    return PauliString(std::move(ops));
}

PauliString PauliString::single(int n_qubits, int qubit, Pauli p)
{
    PauliString s(n_qubits);
    s.set(qubit, p);
    return s;
}

void PauliString::set(int q, Pauli p)
{
    if (q < 0 || q >= n_qubits()) {
        throw std::out_of_range("PauliString::set: qubit " + std::to_string(q) +
                                " out of range");
    }
    ops_[static_cast<std::size_t>(q)] = p;
}

std::uint64_t PauliString::x_mask() const
{
    std::uint64_t mask = 0;
    for (std::size_t q = 0; q < ops_.size(); ++q) {
        if (ops_[q] == Pauli::X || ops_[q] == Pauli::Y) {
            mask |= std::uint64_t{1} << q;
        }
    }
    return mask;
}

std::uint64_t PauliString::z_mask() const
{
    std::uint64_t mask = 0;
    for (std::size_t q = 0; q < ops_.size(); ++q) {
        if (ops_[q] == Pauli::Z || ops_[q] == Pauli::Y) {
            mask |= std::uint64_t{1} << q;
        }
    }
    return mask;
}

int PauliString::y_count() const
{
    int n = 0;
    for (Pauli p : ops_) {
        n += p == Pauli::Y ? 1 : 0;
    }
    return n;
}

int PauliString::weight() const
{
    int n = 0;
    for (Pauli p : ops_) {
        n += p != Pauli::I ? 1 : 0;
    }
    return n;
}

std::string PauliString::str() const
{
    std::string s;
    s.reserve(ops_.size());
    for (Pauli p : ops_) {
        s.push_back(pauli_char(p));
    }
    return s;
}

Observable::Observable(int n_qubits, std::vector<PauliTerm> terms) : n_qubits_(n_qubits)
{
    for (auto &t : terms) {
        add_term(t.coeff, t.string);
    }
}

void Observable::add_term(double coeff, const PauliString &string)
{
    if (!std::isfinite(coeff)) {
        throw std::invalid_argument("Observable: coefficient must be finite");
    }
    if (string.n_qubits() != n_qubits_) {
        throw std::invalid_argument("Observable: term '" + string.str() + "' has " +
                                    std::to_string(string.n_qubits()) +
                                    " qubits, expected " + std::to_string(n_qubits_));
    }
    for (auto &t : terms_) {
        if (t.string == string) {
            t.coeff += coeff;
            return;
        }
    }
    terms_.push_back({coeff, string});
}

double Observable::constant() const
{
    for (const auto &t : terms_) {
        if (t.string.is_identity()) {
            return t.coeff;
        }
    }
    return 0.0;
}

std::uint64_t basis_index_from_bits(std::string_view bits, int n_qubits)
{
    if (static_cast<int>(bits.size()) != n_qubits) {
        throw std::invalid_argument("bitstring '" + std::string(bits) + "' has length " +
                                    std::to_string(bits.size()) + ", expected " +
                                    std::to_string(n_qubits));
    }
    std::uint64_t index = 0;
    for (std::size_t q = 0; q < bits.size(); ++q) {
        if (bits[q] == '1') {
            index |= std::uint64_t{1} << q;
        } else if (bits[q] != '0') {
            throw std::invalid_argument("bitstring '" + std::string(bits) +
                                        "' must contain only 0 and 1");
        }
    }
    return index;
}

ObservableFile parse_observable(std::istream &in)
{
    ObservableFile result;
    std::optional<int> n_qubits;
    std::string line;
    int lineno = 0;
    auto fail = [&](const std::string &msg) {
        throw std::runtime_error("observable line " + std::to_string(lineno) + ": " + msg);
    };
    while (std::getline(in, line)) {
        ++lineno;
        if (auto hash = line.find('#'); hash != std::string::npos) {
            line.erase(hash);
        }
        std::istringstream fields(line);
        std::string head;
        if (!(fields >> head)) {
            continue;
        }
        if (head == "qubits") {
            int n = 0;
            if (n_qubits || !(fields >> n) || n < 1 || n > 30) {
                fail("expected a single 'qubits N' header with 1 <= N <= 30");
            }
            n_qubits = n;
            result.observable = Observable(n);
        } else if (head == "prepare") {
            std::string bits;
            if (!n_qubits || !(fields >> bits)) {
                fail("'prepare <bitstring>' must follow the qubits header");
            }
            try {
                basis_index_from_bits(bits, *n_qubits);
            } catch (const std::invalid_argument &e) {
                fail(e.what());
            }
            result.prepare = bits;
        } else {
            if (!n_qubits) {
                fail("term before 'qubits N' header");
            }
            double coeff = 0.0;
            try {
                std::size_t used = 0;
                coeff = std::stod(head, &used);
                if (used != head.size()) {
                    fail("malformed coefficient '" + head + "'");
                }
            } catch (const std::logic_error &) {
                fail("malformed coefficient '" + head + "'");
            }
            std::string label;
            if (!(fields >> label)) {
                fail("missing Pauli string");
            }
            try {
                result.observable.add_term(coeff, PauliString::parse(label));
            } catch (const std::invalid_argument &e) {
                fail(e.what());
            }
        }
        std::string extra;
        if (fields >> extra) {
            fail("unexpected trailing token '" + extra + "'");
        }
    }
    if (!n_qubits) {
        throw std::runtime_error("observable: missing 'qubits N' header");
    }
    return result;
}

ObservableFile load_observable(const std::string &path)
{
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot open observable file '" + path + "'");
    }
    return parse_observable(in);
}

void write_observable(std::ostream &out, const ObservableFile &file)
{
    out << "qubits " << file.observable.n_qubits() << '\n';
    if (file.prepare) {
        out << "prepare " << *file.prepare << '\n';
    }
    out << std::setprecision(17);
    for (const auto &t : file.observable.terms()) {
        out << t.coeff << ' ' << t.string.str() << '\n';
    }
}

} // namespace flowq
