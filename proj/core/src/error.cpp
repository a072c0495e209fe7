#include "mixar/error.hpp"

namespace mixar {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Order: return "order";
    case ErrorKind::Degenerate: return "degenerate";
    case ErrorKind::Partition: return "partition";
    case ErrorKind::Boundary: return "boundary";
    case ErrorKind::Length: return "length";
    case ErrorKind::Data: return "data";
    case ErrorKind::Domain: return "domain";
    case ErrorKind::Parameter: return "parameter";
    case ErrorKind::Quadrature: return "quadrature";
    case ErrorKind::Estimation: return "estimation";
    case ErrorKind::Io: return "io";
    case ErrorKind::Usage: return "usage";
  }
  return "unknown";
}

int exit_code(ErrorKind kind) {
  // 1 is reserved for unexpected failures.
  switch (kind) {
    case ErrorKind::Usage: return 2;
    case ErrorKind::Io: return 3;
    case ErrorKind::Data: return 4;
    case ErrorKind::Length: return 5;
    case ErrorKind::Parameter: return 6;
    case ErrorKind::Order: return 7;
    case ErrorKind::Degenerate: return 8;
    case ErrorKind::Partition: return 9;
    case ErrorKind::Boundary: return 10;
    case ErrorKind::Domain: return 11;
    case ErrorKind::Quadrature: return 12;
    case ErrorKind::Estimation: return 13;
  }
  return 1;
}

}  // namespace mixar
