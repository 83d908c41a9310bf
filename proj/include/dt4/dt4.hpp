#ifndef DT4_DT4_HPP
#define DT4_DT4_HPP

// Everything: algebra, partitions, vertex, series and the engine.

#include "dt4/algebra/equivariant_class.hpp"
#include "dt4/algebra/euler.hpp"
#include "dt4/algebra/factored_rational.hpp"
#include "dt4/algebra/fields.hpp"
#include "dt4/algebra/linear_form.hpp"
#include "dt4/algebra/modular.hpp"
#include "dt4/algebra/poly.hpp"
#include "dt4/engine/cache.hpp"
#include "dt4/engine/checks.hpp"
#include "dt4/engine/compare.hpp"
#include "dt4/engine/lhs.hpp"
#include "dt4/engine/report.hpp"
#include "dt4/engine/task.hpp"
#include "dt4/errors.hpp"
#include "dt4/partitions/enumerate.hpp"
#include "dt4/partitions/jsonl.hpp"
#include "dt4/partitions/solid_partition.hpp"
#include "dt4/partitions/statistics.hpp"
#include "dt4/series/closed_forms.hpp"
#include "dt4/series/macmahon.hpp"
#include "dt4/series/truncated_series.hpp"
#include "dt4/vertex/chart.hpp"
#include "dt4/vertex/geometry.hpp"
#include "dt4/vertex/vertex.hpp"

#endif  // DT4_DT4_HPP
