#include "hlcheck_app.hpp"

int main(int argc, char** argv) { return hlcheck::run(argc, argv); }
