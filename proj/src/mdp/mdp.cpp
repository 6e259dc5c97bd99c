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

#include "flowq/mdp/mdp.hpp"

#include <stdexcept>

namespace flowq {

void Budgets::validate() const
{
    if (max_gates < 1 || max_params < 1) {
        throw std::invalid_argument("budgets: max_gates and max_params must be >= 1");
    }
}

namespace {

enum class Verdict { Ok, Rule1, Rule2, Rule3, Rule4, GateBudget, ParamBudget, EmptyStop };

const char *describe(Verdict v)
{
    switch (v) {
    case Verdict::Ok:
        return "ok";
    case Verdict::Rule1:
        return "repeats the most recent gate on a shared qubit";
    case Verdict::Rule2:
        return "rotation directly after a rotation on the same qubit";
    case Verdict::Rule3:
        return "CNOT before any gate on its control or target";
    case Verdict::Rule4:
        return "CNOT directly after the reversed CNOT";
    case Verdict::GateBudget:
        return "gate budget exhausted";
    case Verdict::ParamBudget:
        return "rotation budget exhausted";
    case Verdict::EmptyStop:
        return "stop on the empty circuit";
    }
    return "?";
}

class MaskContext {
  public:
    MaskContext(const MdpState &state, const Budgets &budgets)
        : state_(state), budgets_(budgets), last_on_(static_cast<std::size_t>(state.arch.n_qubits()), -1)
    {
        const auto &gates = state.arch.gates();
        for (std::size_t i = 0; i < gates.size(); ++i) {
            last_on_[static_cast<std::size_t>(gates[i].qubit0)] = static_cast<int>(i);
            if (!gates[i].is_rotation()) {
                last_on_[static_cast<std::size_t>(gates[i].qubit1)] = static_cast<int>(i);
            }
        }
    }

    Verdict check(const Action &action) const
    {
        const auto &gates = state_.arch.gates();
        if (action.is_stop()) {
            return gates.empty() ? Verdict::EmptyStop : Verdict::Ok;
        }
        if (static_cast<int>(gates.size()) >= budgets_.max_gates) {
            return Verdict::GateBudget;
        }
        const GateInstance candidate = action.placement();
        if (action.is_rotation()) {
            if (state_.arch.n_params() >= budgets_.max_params) {
                return Verdict::ParamBudget;
            }
            const int last = last_on_[static_cast<std::size_t>(action.qubit0)];
            if (last >= 0) {
                if (gates[static_cast<std::size_t>(last)].same_placement(candidate)) {
                    return Verdict::Rule1;
                }
                if (gates[static_cast<std::size_t>(last)].is_rotation()) {
                    return Verdict::Rule2;
                }
            }
            return Verdict::Ok;
        }
        const int last_c = last_on_[static_cast<std::size_t>(action.qubit0)];
        const int last_t = last_on_[static_cast<std::size_t>(action.qubit1)];
        if (last_c < 0 && last_t < 0) {
            return Verdict::Rule3;
        }
        for (int last : {last_c, last_t}) {
            if (last >= 0 && gates[static_cast<std::size_t>(last)].same_placement(candidate)) {
                return Verdict::Rule1;
            }
        }
        const GateInstance &previous = gates.back();
        if (previous.kind == GateKind::CNOT && previous.qubit0 == action.qubit1 &&
            previous.qubit1 == action.qubit0) {
            return Verdict::Rule4;
        }
        return Verdict::Ok;
    }

  private:
    const MdpState &state_;
    const Budgets &budgets_;
    std::vector<int> last_on_;
};

} // namespace

std::vector<bool> mask(const ActionSpace &space, const MdpState &state, const Budgets &budgets)
{
    if (state.stopped) {
        throw std::logic_error("mask: state is already stopped");
    }
    if (state.arch.n_qubits() != space.n_qubits()) {
        throw std::invalid_argument("mask: state and action space disagree on qubit count");
    }
    MaskContext ctx(state, budgets);
    std::vector<bool> valid(space.size());
    for (std::size_t i = 0; i < space.size(); ++i) {
        valid[i] = ctx.check(space[i]) == Verdict::Ok;
    }
    return valid;
}

MdpState step(const ActionSpace &space, const MdpState &state, std::size_t index,
              const Budgets &budgets)
{
    if (state.stopped) {
        throw std::invalid_argument("step: state is already stopped");
    }
    if (index >= space.size()) {
        throw std::invalid_argument("step: action index " + std::to_string(index) +
                                    " out of range");
    }
    const Action &action = space[index];
    const Verdict verdict = MaskContext(state, budgets).check(action);
    if (verdict != Verdict::Ok) {
        throw std::invalid_argument("step: action " + action.str() + " is invalid (" +
                                    describe(verdict) + ")");
    }
    MdpState next = state;
    if (action.is_stop()) {
        next.stopped = true;
    } else {
        next.arch.append(action.placement());
    }
    return next;
}

int parent_count(const MdpState &state)
{
    return state.is_initial() ? 0 : 1;
}

std::vector<int> encode(const ActionSpace &space, const CircuitArch &arch)
{
    std::vector<int> tokens;
    tokens.reserve(arch.size() + 1);
    tokens.push_back(space.bos_token());
    for (const auto &g : arch.gates()) {
        const int token = space.index_of(g);
        if (token < 0) {
            throw std::invalid_argument("encode: gate outside the action space");
        }
        tokens.push_back(token);
    }
    return tokens;
}

std::vector<int> encode(const ActionSpace &space, const MdpState &state)
{
    return encode(space, state.arch);
}

std::string canonical_key(const CircuitArch &arch)
{
    std::string key = "n" + std::to_string(arch.n_qubits());
    for (const auto &g : arch.gates()) {
        key += '|';
        key += gate_name(g.kind);
        key += std::to_string(g.qubit0);
        if (!g.is_rotation()) {
            key += ',' + std::to_string(g.qubit1);
        }
    }
    return key;
}

MdpState replay(const ActionSpace &space, const std::vector<int> &actions, const Budgets &budgets)
{
    MdpState s = MdpState::initial(space.n_qubits());
    for (int a : actions) {
        s = step(space, s, static_cast<std::size_t>(a), budgets);
    }
    return s;
}

} // namespace flowq
