rs 1
n 8
e 1 2
e 1 3
e 1 5
e 2 4
e 2 6
e 3 4
e 3 7
e 4 8
e 5 6
e 5 7
e 6 8
e 7 8
r 1: 2 3 5
r 2: 1 6 4
r 3: 1 4 7
r 4: 2 8 3
r 5: 1 7 6
r 6: 2 5 8
r 7: 3 8 5
r 8: 4 6 7
