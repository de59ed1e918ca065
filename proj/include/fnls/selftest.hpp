#pragma once

#include "fnls/report.hpp"

namespace fnls {

// End-to-end suite of the closed-form identities every module must satisfy
// (exact coefficients, exact phases, exact partitions). One note per check;
// pass iff all hold.
AuditReport run_selftest();

}  // namespace fnls
