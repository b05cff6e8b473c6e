#include "qdual/verifier.hpp"
int main(){return 0;}
