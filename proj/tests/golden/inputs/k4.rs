rs 1
n 4
e 1 2
e 1 3
e 1 4
e 2 3
e 2 4
e 3 4
r 1: 2 3 4
r 2: 1 4 3
r 3: 1 2 4
r 4: 1 3 2
