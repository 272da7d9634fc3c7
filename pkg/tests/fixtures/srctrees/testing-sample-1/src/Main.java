package fixtures.testing;

// Fixture project for the Testing category.
public class SuiteFixtureMain {
    private static final String BANNER = "fixture: Testing"; // excluded literal
    private int sharedCount = 0;

    private long verifySuite;
    private long expectFixture;
    private long harnessAssertion;
    private long scenarioReport;
    void verifySuiteRun0() {
        long suiteVerify0 = 0L;
        long fixtureExpect0 = 0L;
        long assertionHarness0 = 0L;
        long reportScenario0 = 0L;
    }

    void expectFixtureRun1() {
        long suiteExpect1 = 0L;
        long fixtureHarness1 = 0L;
        long assertionScenario1 = 0L;
        long reportVerify1 = 0L;
    }

    /* Helper block comment: identifiers in here are ignored too. */
    void configLoggerFactory() {
        sharedCount += 1;
    }
}
