package fixtures.restframeworks;

// Fixture project for the REST Frameworks category.
public class EndpointResourceMain {
    private static final String BANNER = "fixture: REST Frameworks"; // excluded literal
    private int sharedCount = 0;

    private long requestEndpoint;
    private long responseResource;
    private long httpPayload;
    private long servletApi;
    private long sessionEndpoint;
    void requestEndpointRun0() {
        long endpointRequest0 = 0L;
        long resourceResponse0 = 0L;
        long payloadHttp0 = 0L;
        long apiServlet0 = 0L;
    }

    void responseResourceRun1() {
        long endpointResponse1 = 0L;
        long resourceHttp1 = 0L;
        long payloadServlet1 = 0L;
        long apiSession1 = 0L;
    }

    void httpPayloadRun2() {
        long endpointHttp2 = 0L;
        long resourceServlet2 = 0L;
        long payloadSession2 = 0L;
        long apiRequest2 = 0L;
    }

    /* Helper block comment: identifiers in here are ignored too. */
    void configLoggerFactory() {
        sharedCount += 1;
    }
}
