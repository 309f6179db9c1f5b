#include "linrel/linrel.hpp"
int main(){return 0;}
