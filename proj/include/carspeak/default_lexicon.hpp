// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string_view>

namespace carspeak {

// Mirror of data/lexicon.tsv; tests keep the two in sync.
inline constexpr std::string_view kDefaultLexicon = R"LEX(about	OTHER
above	OTHER
acceleration	NOUN
across	OTHER
actually	OTHER
add	OTHER
added	OTHER
adding	OTHER
adds	OTHER
adequate	ADJ
affordable	ADJ
after	OTHER
again	OTHER
against	OTHER
aggressive	ADJ
agile	ADJ
airbag	NOUN
airbags	NOUN
all	OTHER
almost	OTHER
along	OTHER
already	OTHER
also	OTHER
although	OTHER
always	OTHER
am	OTHER
amid	OTHER
among	OTHER
ample	ADJ
an	OTHER
and	OTHER
another	OTHER
any	OTHER
anyway	OTHER
are	OTHER
around	OTHER
as	OTHER
assembly	NOUN
at	OTHER
athletic	ADJ
attractive	ADJ
audio	NOUN
auto	NOUN
automatic	ADJ
automobile	NOUN
available	ADJ
bad	ADJ
basic	ADJ
battery	NOUN
be	OTHER
beautiful	ADJ
became	OTHER
because	OTHER
become	OTHER
becomes	OTHER
becoming	OTHER
bed	NOUN
been	OTHER
before	OTHER
behind	OTHER
being	OTHER
below	OTHER
beneath	OTHER
beside	OTHER
besides	OTHER
best	ADJ
better	ADJ
between	OTHER
beyond	OTHER
big	ADJ
bigger	ADJ
biggest	ADJ
billion	OTHER
bland	ADJ
body	NOUN
boring	ADJ
both	OTHER
brake	NOUN
brakes	NOUN
braking	NOUN
brand	NOUN
brands	NOUN
bring	OTHER
bringing	OTHER
brings	OTHER
brought	OTHER
but	OTHER
buyer	NOUN
buyers	NOUN
by	OTHER
cabin	NOUN
came	OTHER
camera	NOUN
cameras	NOUN
can	OTHER
capable	ADJ
capacity	NOUN
car	NOUN
cargo	NOUN
cars	NOUN
cheap	ADJ
cheaper	ADJ
cheapest	ADJ
child	NOUN
children	NOUN
city	NOUN
class	NOUN
classic	ADJ
clunky	ADJ
come	OTHER
comes	OTHER
comfort	NOUN
comfortable	ADJ
comfy	ADJ
coming	OTHER
commute	NOUN
compact	ADJ
competitor	NOUN
competitors	NOUN
convertible	NOUN
cost	NOUN
costly	ADJ
could	OTHER
coupe	NOUN
coupes	NOUN
cramped	ADJ
crossover	NOUN
crossovers	NOUN
dealer	NOUN
dealers	NOUN
dealership	NOUN
decent	ADJ
dependable	ADJ
design	NOUN
despite	OTHER
did	OTHER
diesel	ADJ
difficult	ADJ
display	NOUN
do	OTHER
does	OTHER
doing	OTHER
done	OTHER
door	NOUN
doors	NOUN
down	OTHER
driver	NOUN
drivers	NOUN
drivetrain	NOUN
durable	ADJ
during	OTHER
each	OTHER
early	ADJ
earn	OTHER
earned	OTHER
earning	OTHER
earns	OTHER
easier	ADJ
easy	ADJ
economical	ADJ
economy	NOUN
efficiency	NOUN
efficient	ADJ
eight	OTHER
either	OTHER
electric	ADJ
elegant	ADJ
eleven	OTHER
else	OTHER
engine	NOUN
engines	NOUN
especially	OTHER
etc	OTHER
even	OTHER
ever	OTHER
every	OTHER
excellent	ADJ
except	OTHER
exciting	ADJ
expensive	ADJ
exterior	NOUN
families	NOUN
family	NOUN
fast	ADJ
feature	NOUN
features	NOUN
feel	OTHER
feeling	OTHER
feels	OTHER
felt	OTHER
few	OTHER
fewer	OTHER
find	OTHER
finding	OTHER
finds	OTHER
fine	ADJ
firm	ADJ
five	OTHER
for	OTHER
found	OTHER
four	OTHER
frame	NOUN
friendly	ADJ
from	OTHER
front	ADJ
frugal	ADJ
fuel	NOUN
full	ADJ
fully	OTHER
fun	ADJ
gas	NOUN
gave	OTHER
gearbox	NOUN
generous	ADJ
get	OTHER
gets	OTHER
getting	OTHER
give	OTHER
given	OTHER
gives	OTHER
giving	OTHER
go	OTHER
goes	OTHER
going	OTHER
gone	OTHER
good	ADJ
got	OTHER
gotten	OTHER
great	ADJ
had	OTHER
half	OTHER
handling	NOUN
handsome	ADJ
hard	ADJ
harder	ADJ
has	OTHER
hatchback	NOUN
hatchbacks	NOUN
have	OTHER
having	OTHER
he	OTHER
headroom	NOUN
heavy	ADJ
held	OTHER
help	OTHER
helped	OTHER
helping	OTHER
helps	OTHER
hence	OTHER
her	OTHER
here	OTHER
hers	OTHER
herself	OTHER
hey	OTHER
high	ADJ
higher	ADJ
highest	ADJ
highway	NOUN
him	OTHER
himself	OTHER
his	OTHER
hold	OTHER
holding	OTHER
holds	OTHER
horsepower	NOUN
how	OTHER
however	OTHER
huge	ADJ
hundred	OTHER
hybrid	ADJ
if	OTHER
impressive	ADJ
in	OTHER
include	OTHER
included	OTHER
includes	OTHER
including	OTHER
indeed	OTHER
inexpensive	ADJ
infotainment	NOUN
inside	OTHER
instead	OTHER
interior	NOUN
into	OTHER
intuitive	ADJ
is	OTHER
it	OTHER
its	OTHER
itself	OTHER
just	OTHER
keep	OTHER
keeping	OTHER
keeps	OTHER
kept	OTHER
kid	NOUN
kids	NOUN
knew	OTHER
know	OTHER
knowing	OTHER
known	OTHER
knows	OTHER
large	ADJ
larger	ADJ
largest	ADJ
least	OTHER
leather	NOUN
leave	OTHER
leaves	OTHER
leaving	OTHER
left	OTHER
legroom	NOUN
less	OTHER
let	OTHER
lets	OTHER
light	ADJ
lighter	ADJ
like	OTHER
liked	OTHER
likely	ADJ
likes	OTHER
liking	OTHER
lively	ADJ
long	ADJ
longer	ADJ
look	OTHER
looked	OTHER
looking	OTHER
looks	OTHER
loud	ADJ
lovely	ADJ
low	ADJ
lower	ADJ
lowest	ADJ
luxurious	ADJ
luxury	NOUN
made	OTHER
make	OTHER
makes	OTHER
making	OTHER
manual	ADJ
manufacturer	NOUN
many	OTHER
massive	ADJ
material	NOUN
materials	NOUN
may	OTHER
maybe	OTHER
me	OTHER
mediocre	ADJ
midsize	ADJ
might	OTHER
mile	NOUN
mileage	NOUN
miles	NOUN
million	OTHER
mine	OTHER
minivan	NOUN
minivans	NOUN
model	NOUN
models	NOUN
modern	ADJ
more	OTHER
most	OTHER
motor	NOUN
mph	NOUN
much	OTHER
must	OTHER
my	OTHER
myself	OTHER
narrow	ADJ
navigation	NOUN
near	OTHER
need	OTHER
needed	OTHER
needing	OTHER
needs	OTHER
neither	OTHER
never	OTHER
new	ADJ
newer	ADJ
newest	ADJ
nice	ADJ
nimble	ADJ
nine	OTHER
no	OTHER
noisy	ADJ
nor	OTHER
not	OTHER
now	OTHER
of	OTHER
off	OTHER
offer	OTHER
offered	OTHER
offering	OTHER
offers	OTHER
often	OTHER
oh	OTHER
ok	OTHER
okay	OTHER
old	ADJ
older	ADJ
oldest	ADJ
on	OTHER
once	OTHER
one	OTHER
ones	OTHER
oneself	OTHER
only	OTHER
onto	OTHER
optional	ADJ
or	OTHER
other	OTHER
otherwise	OTHER
ought	OTHER
our	OTHER
ours	OTHER
ourselves	OTHER
out	OTHER
outside	OTHER
outstanding	ADJ
over	OTHER
owner	NOUN
owners	NOUN
passenger	NOUN
passengers	NOUN
past	OTHER
payload	NOUN
peppy	ADJ
per	OTHER
performance	NOUN
perhaps	OTHER
pickup	NOUN
plastic	NOUN
pleasant	ADJ
plus	OTHER
plush	ADJ
poor	ADJ
potent	ADJ
power	NOUN
powerful	ADJ
practical	ADJ
precise	ADJ
premium	ADJ
price	NOUN
pricey	ADJ
provide	OTHER
provided	OTHER
provides	OTHER
providing	OTHER
put	OTHER
puts	OTHER
quality	NOUN
quick	ADJ
quicker	ADJ
quickest	ADJ
quiet	ADJ
quite	OTHER
rally	NOUN
range	NOUN
ranked	OTHER
ranking	OTHER
ranks	OTHER
rapid	ADJ
rate	OTHER
rated	OTHER
rates	OTHER
rather	OTHER
rating	NOUN
ratings	NOUN
really	OTHER
rear	ADJ
refined	ADJ
reliability	NOUN
reliable	ADJ
remain	OTHER
remained	OTHER
remaining	OTHER
remains	OTHER
responsive	ADJ
review	NOUN
reviews	NOUN
ride	NOUN
rival	NOUN
rivals	NOUN
road	NOUN
roads	NOUN
roadster	NOUN
roof	NOUN
room	NOUN
roomy	ADJ
rough	ADJ
row	NOUN
rows	NOUN
rugged	ADJ
safe	ADJ
safer	ADJ
safest	ADJ
safety	NOUN
said	OTHER
saw	OTHER
say	OTHER
saying	OTHER
says	OTHER
score	OTHER
scored	OTHER
scores	OTHER
scoring	OTHER
screen	NOUN
seat	NOUN
seating	NOUN
seats	NOUN
secure	ADJ
sedan	NOUN
sedans	NOUN
see	OTHER
seeing	OTHER
seem	OTHER
seemed	OTHER
seeming	OTHER
seems	OTHER
seen	OTHER
sees	OTHER
segment	NOUN
sensor	NOUN
sensors	NOUN
seven	OTHER
several	OTHER
shall	OTHER
sharp	ADJ
she	OTHER
short	ADJ
shorter	ADJ
should	OTHER
silly	ADJ
simple	ADJ
simply	OTHER
since	OTHER
six	OTHER
sleek	ADJ
sloppy	ADJ
slow	ADJ
slower	ADJ
small	ADJ
smaller	ADJ
smallest	ADJ
smooth	ADJ
so	OTHER
soft	ADJ
solid	ADJ
some	OTHER
sometimes	OTHER
soon	OTHER
space	NOUN
spacious	ADJ
speaker	NOUN
speakers	NOUN
speed	NOUN
speedy	ADJ
sporty	ADJ
standard	ADJ
steering	NOUN
stereo	NOUN
stiff	ADJ
still	OTHER
strong	ADJ
stronger	ADJ
sturdy	ADJ
style	NOUN
styling	NOUN
stylish	ADJ
such	OTHER
sunroof	NOUN
superb	ADJ
supercharged	ADJ
supply	NOUN
suspension	NOUN
suv	NOUN
suvs	NOUN
system	NOUN
systems	NOUN
take	OTHER
taken	OTHER
takes	OTHER
taking	OTHER
tall	ADJ
tech	NOUN
technology	NOUN
ten	OTHER
than	OTHER
that	OTHER
the	OTHER
their	OTHER
theirs	OTHER
them	OTHER
themselves	OTHER
then	OTHER
there	OTHER
therefore	OTHER
these	OTHER
they	OTHER
think	OTHER
thinking	OTHER
thinks	OTHER
this	OTHER
those	OTHER
though	OTHER
thought	OTHER
thousand	OTHER
three	OTHER
thrilling	ADJ
through	OTHER
throughout	OTHER
thus	OTHER
tight	ADJ
till	OTHER
tiny	ADJ
tires	NOUN
to	OTHER
today	OTHER
tomorrow	OTHER
too	OTHER
took	OTHER
top	ADJ
torque	NOUN
touchscreen	NOUN
toward	OTHER
towards	OTHER
towing	NOUN
town	NOUN
track	NOUN
transmission	NOUN
tried	OTHER
tries	OTHER
trim	NOUN
trims	NOUN
trip	NOUN
trips	NOUN
truck	NOUN
trucks	NOUN
trunk	NOUN
try	OTHER
trying	OTHER
turbocharged	ADJ
twelve	OTHER
twice	OTHER
two	OTHER
ugly	ADJ
under	OTHER
unless	OTHER
until	OTHER
up	OTHER
upon	OTHER
upper	ADJ
upright	ADJ
upscale	ADJ
us	OTHER
usable	ADJ
use	OTHER
used	OTHER
useful	ADJ
uses	OTHER
using	OTHER
usually	OTHER
value	NOUN
van	NOUN
vehicle	NOUN
vehicles	NOUN
versatile	ADJ
versus	OTHER
very	OTHER
via	OTHER
vs	OTHER
wagon	NOUN
want	OTHER
wanted	OTHER
wanting	OTHER
wants	OTHER
warranty	NOUN
was	OTHER
we	OTHER
weak	ADJ
weaker	ADJ
weekend	NOUN
well	OTHER
went	OTHER
were	OTHER
what	OTHER
whatever	OTHER
wheel	NOUN
wheels	NOUN
when	OTHER
where	OTHER
whereas	OTHER
whether	OTHER
which	OTHER
whichever	OTHER
while	OTHER
who	OTHER
whoever	OTHER
whom	OTHER
whose	OTHER
why	OTHER
wide	ADJ
will	OTHER
window	NOUN
windows	NOUN
with	OTHER
within	OTHER
without	OTHER
worse	ADJ
worst	ADJ
would	OTHER
year	NOUN
years	NOUN
yes	OTHER
yesterday	OTHER
yet	OTHER
you	OTHER
your	OTHER
yours	OTHER
yourself	OTHER
yourselves	OTHER
zippy	ADJ
#SUFFIX
-ly	OTHER
-ness	NOUN
-tion	NOUN
-sion	NOUN
-ment	NOUN
-ity	NOUN
-ance	NOUN
-ence	NOUN
-ship	NOUN
-ism	NOUN
-ous	ADJ
-ful	ADJ
-ive	ADJ
-able	ADJ
-ible	ADJ
-less	ADJ
-ish	ADJ
-ic	ADJ
-al	ADJ
-ize	OTHER
)LEX";

}  // namespace carspeak
